// Copyright 2026 The bandlim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bandlim/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/error.hpp"
#include "bandlim/rng.hpp"

namespace bandlim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

struct IntRow {
  std::array<long, 3> v{0, 0, 0};
};

// Basis rows plus the integer transform back to the original generators:
// row_i = sum_j U[i][j] * original_j.
struct ReducedBasis {
  Mat3 rows;
  std::array<IntRow, 3> transform;
  int dim;
};

void swap_rows(ReducedBasis& b, int i, int j) {
  std::swap(b.rows[i], b.rows[j]);
  std::swap(b.transform[i], b.transform[j]);
}

// rows[i] -= mu * rows[j]
void axpy_row(ReducedBasis& b, int i, long mu, int j) {
  b.rows[i] -= static_cast<double>(mu) * b.rows[j];
  for (int c = 0; c < 3; ++c) b.transform[i].v[c] -= mu * b.transform[j].v[c];
}

// Lagrange/greedy pair reduction.
void reduce_pair(ReducedBasis& b, int i, int j) {
  for (int iter = 0; iter < 64; ++iter) {
    if (norm2(b.rows[i]) < norm2(b.rows[j])) swap_rows(b, i, j);
    const long mu = std::lround(dot(b.rows[i], b.rows[j]) / norm2(b.rows[j]));
    if (mu == 0) return;
    axpy_row(b, i, mu, j);
  }
}

ReducedBasis reduce_basis(const Mat3& gens, int dim) {
  ReducedBasis b{gens, {}, dim};
  for (int i = 0; i < 3; ++i) b.transform[i].v[i] = 1;
  if (dim == 1) return b;
  if (dim == 2) {
    reduce_pair(b, 1, 0);
    reduce_pair(b, 0, 1);
    reduce_pair(b, 1, 0);
    return b;
  }
  // Greedy 3D reduction: repeatedly shorten the longest vector against the
  // closest point of the plane lattice of the other two.
  for (int iter = 0; iter < 256; ++iter) {
    // sort rows by norm ascending
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (norm2(b.rows[j]) < norm2(b.rows[i])) swap_rows(b, i, j);
    reduce_pair(b, 1, 0);
    const double g00 = norm2(b.rows[0]);
    const double g11 = norm2(b.rows[1]);
    const double g01 = dot(b.rows[0], b.rows[1]);
    const double g02 = dot(b.rows[0], b.rows[2]);
    const double g12 = dot(b.rows[1], b.rows[2]);
    const double denom = g00 * g11 - g01 * g01;
    const double y0 = -(g11 * g02 - g01 * g12) / denom;
    const double y1 = -(g00 * g12 - g01 * g02) / denom;
    double best = norm2(b.rows[2]);
    long bx = 0, by = 0;
    for (long x = static_cast<long>(std::floor(y0)); x <= static_cast<long>(std::floor(y0)) + 1; ++x)
      for (long y = static_cast<long>(std::floor(y1)); y <= static_cast<long>(std::floor(y1)) + 1; ++y) {
        const Vec3 trial = b.rows[2] + static_cast<double>(x) * b.rows[0] +
                           static_cast<double>(y) * b.rows[1];
        if (norm2(trial) < best * (1.0 - 1e-14)) {
          best = norm2(trial);
          bx = x;
          by = y;
        }
      }
    if (bx == 0 && by == 0) break;
    axpy_row(b, 2, -bx, 0);
    axpy_row(b, 2, -by, 1);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (norm2(b.rows[j]) < norm2(b.rows[i])) swap_rows(b, i, j);
  return b;
}

}  // namespace

double LatticeBasis::density() const {
  const double d = std::abs(det());
  if (d == 0.0) throw Error(Errc::degenerate_basis, "zero cell volume");
  return 1.0 / d;
}

ShortestVector shortest_vector(const Mat3& generators, int dim) {
  if (dim == 1) {
    ShortestVector sv;
    sv.norm = norm(generators[0]);
    sv.coeffs = {1, 0, 0};
    return sv;
  }
  const ReducedBasis red = reduce_basis(generators, dim);
  const int span = 3;
  double best = -1.0;
  std::array<long, 3> bestn{0, 0, 0};
  std::array<long, 3> n{0, 0, 0};
  const long lim2 = (dim >= 2) ? span : 0;
  const long lim3 = (dim >= 3) ? span : 0;
  for (n[0] = -span; n[0] <= span; ++n[0])
    for (n[1] = -lim2; n[1] <= lim2; ++n[1])
      for (n[2] = -lim3; n[2] <= lim3; ++n[2]) {
        if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
        const Vec3 v = static_cast<double>(n[0]) * red.rows[0] +
                       static_cast<double>(n[1]) * red.rows[1] +
                       static_cast<double>(n[2]) * red.rows[2];
        const double m = norm2(v);
        if (best < 0.0 || m < best) {
          best = m;
          bestn = n;
        }
      }
  ShortestVector sv;
  sv.norm = std::sqrt(best);
  for (int c = 0; c < 3; ++c) {
    long acc = 0;
    for (int i = 0; i < 3; ++i) acc += bestn[i] * red.transform[i].v[c];
    sv.coeffs[c] = static_cast<int>(acc);
  }
  // canonical sign: first nonzero coefficient positive
  for (int c = 0; c < 3; ++c) {
    if (sv.coeffs[c] == 0) continue;
    if (sv.coeffs[c] < 0)
      for (int j = 0; j < 3; ++j) sv.coeffs[j] = -sv.coeffs[j];
    break;
  }
  return sv;
}

ReciprocalBasis reciprocal(const LatticeBasis& basis) {
  double scale = 1.0;
  for (int i = 0; i < basis.dim; ++i) scale *= norm(basis.generators[i]);
  if (std::abs(basis.det()) <= 1e-12 * scale)
    throw Error(Errc::degenerate_basis, "generators are linearly dependent");
  ReciprocalBasis r;
  r.dim = basis.dim;
  Mat3 m = transpose(inverse(basis.generators, basis.dim));
  for (int i = 0; i < 3; ++i) m[i] *= kTwoPi;
  // keep unit rows on the unused dimensions
  for (int i = basis.dim; i < 3; ++i) {
    m[i] = Vec3{};
    m[i][i] = 1.0;
  }
  r.generators = m;
  const ShortestVector sv = shortest_vector(m, basis.dim);
  r.shortest_norm = sv.norm;
  r.shortest_coeffs = sv.coeffs;
  return r;
}

std::vector<LatticePoint> enumerate_in_ball(const Mat3& generators, int dim,
                                            double radius) {
  if (!(radius > 0.0))
    throw Error(Errc::invalid_parameter, "enumeration radius must be > 0");
  const ReducedBasis red = reduce_basis(generators, dim);
  // coefficient bounds from the dual rows: n_i = k . d_i
  Mat3 embedded = red.rows;
  for (int i = dim; i < 3; ++i) {
    embedded[i] = Vec3{};
    embedded[i][i] = 1.0;
  }
  const Mat3 dual = transpose(inverse(embedded, 3));
  std::array<long, 3> bound{0, 0, 0};
  double box = 1.0;
  for (int i = 0; i < dim; ++i) {
    bound[i] = static_cast<long>(std::floor(radius * norm(dual[i]))) + 1;
    box *= 2.0 * bound[i] + 1.0;
  }
  if (box > 5e7)
    throw Error(Errc::invalid_parameter,
                "enumeration ball contains too many lattice points");
  std::vector<LatticePoint> out;
  const double r2 = radius * radius;
  std::array<long, 3> n{0, 0, 0};
  for (n[0] = -bound[0]; n[0] <= bound[0]; ++n[0])
    for (n[1] = -bound[1]; n[1] <= bound[1]; ++n[1])
      for (n[2] = -bound[2]; n[2] <= bound[2]; ++n[2]) {
        const Vec3 k = static_cast<double>(n[0]) * red.rows[0] +
                       static_cast<double>(n[1]) * red.rows[1] +
                       static_cast<double>(n[2]) * red.rows[2];
        const double m2 = norm2(k);
        if (m2 >= r2) continue;
        LatticePoint p;
        p.k = k;
        p.norm = std::sqrt(m2);
        for (int c = 0; c < 3; ++c) {
          long acc = 0;
          for (int i = 0; i < 3; ++i) acc += n[i] * red.transform[i].v[c];
          p.coeffs[c] = static_cast<int>(acc);
        }
        out.push_back(p);
      }
  std::sort(out.begin(), out.end(),
            [](const LatticePoint& a, const LatticePoint& b) {
              if (a.norm != b.norm) return a.norm < b.norm;
              return a.coeffs < b.coeffs;
            });
  return out;
}

PeriodicConfiguration make_configuration(LatticeBasis basis,
                                         const std::vector<Vec3>& cartesian) {
  if (cartesian.empty())
    throw Error(Errc::invalid_parameter, "configuration needs offsets");
  const Mat3 inv = inverse(basis.generators, basis.dim);
  PeriodicConfiguration cfg;
  cfg.basis = basis;
  cfg.offsets.clear();
  Vec3 first = apply(cartesian[0], inv);
  for (const Vec3& y : cartesian) {
    Vec3 f = apply(y, inv) - first;
    for (int i = 0; i < basis.dim; ++i) f[i] -= std::floor(f[i]);
    for (int i = basis.dim; i < 3; ++i) f[i] = 0.0;
    cfg.offsets.push_back(f);
  }
  // pairwise distinct modulo the lattice
  for (std::size_t i = 0; i < cfg.offsets.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.offsets.size(); ++j) {
      Vec3 d = cfg.offsets[i] - cfg.offsets[j];
      double m2 = 0.0;
      for (int c = 0; c < basis.dim; ++c) {
        const double w = d[c] - std::round(d[c]);
        m2 += w * w;
      }
      if (m2 < 1e-20)
        throw Error(Errc::invalid_parameter,
                    "offsets coincide modulo the lattice");
    }
  return cfg;
}

bool offsets_minimal(const PeriodicConfiguration& config) {
  const int j = config.point_count();
  if (j == 1) return true;
  const int dim = config.basis.dim;
  auto wraps_onto_itself = [&](const Vec3& delta) {
    for (const Vec3& y : config.offsets) {
      bool found = false;
      for (const Vec3& z : config.offsets) {
        double m2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          const double w = y[c] + delta[c] - z[c];
          const double frac = w - std::round(w);
          m2 += frac * frac;
        }
        if (m2 < 1e-16) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  for (int a = 0; a < j; ++a)
    for (int b = 0; b < j; ++b) {
      if (a == b) continue;
      const Vec3 delta = config.offsets[a] - config.offsets[b];
      // finite order m <= 4 modulo the lattice?
      for (int m = 2; m <= 4; ++m) {
        bool integral = true;
        for (int c = 0; c < dim; ++c) {
          const double w = m * delta[c];
          if (std::abs(w - std::round(w)) > 1e-9) integral = false;
        }
        if (integral && wraps_onto_itself(delta)) return false;
      }
    }
  return true;
}

int PeriodCell::points_per_cell() const {
  return multipliers[0] * (basis.dim > 1 ? multipliers[1] : 1) *
         (basis.dim > 2 ? multipliers[2] : 1);
}

double PeriodCell::volume() const {
  return std::abs(basis.det()) * points_per_cell();
}

Mat3 PeriodCell::cell_matrix() const {
  Mat3 m = basis.generators;
  for (int i = 0; i < basis.dim; ++i) m[i] *= static_cast<double>(multipliers[i]);
  return m;
}

Mat3 PeriodCell::dual_matrix() const {
  const ReciprocalBasis r = reciprocal(basis);
  Mat3 m = r.generators;
  for (int i = 0; i < basis.dim; ++i)
    m[i] *= 1.0 / static_cast<double>(multipliers[i]);
  return m;
}

const char* lattice_name_string(LatticeName n) {
  switch (n) {
    case LatticeName::chain: return "chain";
    case LatticeName::square: return "square";
    case LatticeName::triangular: return "triangular";
    case LatticeName::sc: return "sc";
    case LatticeName::bcc: return "bcc";
    case LatticeName::fcc: return "fcc";
    case LatticeName::sh: return "sh";
    case LatticeName::hcp: return "hcp";
  }
  return "unknown";
}

LatticeName lattice_name_from_string(const std::string& s) {
  for (LatticeName n :
       {LatticeName::chain, LatticeName::square, LatticeName::triangular,
        LatticeName::sc, LatticeName::bcc, LatticeName::fcc, LatticeName::sh,
        LatticeName::hcp})
    if (s == lattice_name_string(n)) return n;
  throw Error(Errc::unknown_lattice, s);
}

int lattice_dimension(LatticeName n) {
  switch (n) {
    case LatticeName::chain: return 1;
    case LatticeName::square:
    case LatticeName::triangular: return 2;
    default: return 3;
  }
}

double default_axial_ratio(LatticeName n) {
  if (n == LatticeName::sh) return std::sqrt(3.0) / 2.0;
  if (n == LatticeName::hcp) return std::sqrt(8.0 / 3.0);
  return 0.0;
}

PeriodicConfiguration named_lattice(LatticeName name, double scale,
                                    double c_over_a) {
  if (!(scale > 0.0))
    throw Error(Errc::invalid_parameter, "lattice constant must be > 0");
  if (c_over_a == 0.0) c_over_a = default_axial_ratio(name);
  PeriodicConfiguration cfg;
  LatticeBasis& b = cfg.basis;
  b.dim = lattice_dimension(name);
  Mat3& g = b.generators;
  g = Mat3::identity();
  const double a = scale;
  const double r3 = std::sqrt(3.0);
  switch (name) {
    case LatticeName::chain:
      g[0] = {a, 0, 0};
      break;
    case LatticeName::square:
      g[0] = {a, 0, 0};
      g[1] = {0, a, 0};
      break;
    case LatticeName::triangular:
      g[0] = {a, 0, 0};
      g[1] = {0.5 * a, 0.5 * r3 * a, 0};
      break;
    case LatticeName::sc:
      g[0] = {a, 0, 0};
      g[1] = {0, a, 0};
      g[2] = {0, 0, a};
      break;
    case LatticeName::bcc:
      g[0] = {-0.5 * a, 0.5 * a, 0.5 * a};
      g[1] = {0.5 * a, -0.5 * a, 0.5 * a};
      g[2] = {0.5 * a, 0.5 * a, -0.5 * a};
      break;
    case LatticeName::fcc:
      g[0] = {0, 0.5 * a, 0.5 * a};
      g[1] = {0.5 * a, 0, 0.5 * a};
      g[2] = {0.5 * a, 0.5 * a, 0};
      break;
    case LatticeName::sh:
    case LatticeName::hcp: {
      if (!(c_over_a > 0.0))
        throw Error(Errc::invalid_parameter, "axial ratio must be > 0");
      g[0] = {a, 0, 0};
      g[1] = {0.5 * a, 0.5 * r3 * a, 0};
      g[2] = {0, 0, c_over_a * a};
      break;
    }
  }
  if (name == LatticeName::hcp)
    cfg.offsets = {Vec3{0, 0, 0}, Vec3{1.0 / 3.0, 1.0 / 3.0, 0.5}};
  return cfg;
}

PeriodicConfiguration scale_to_density(const PeriodicConfiguration& config,
                                       double rho_target) {
  if (!(rho_target > 0.0))
    throw Error(Errc::invalid_parameter, "target density must be > 0");
  const double s =
      std::pow(config.density() / rho_target, 1.0 / config.basis.dim);
  PeriodicConfiguration out = config;
  for (int i = 0; i < config.basis.dim; ++i) out.basis.generators[i] *= s;
  return out;
}

ThresholdDensity threshold_density(LatticeName name, double k0,
                                   double c_over_a) {
  if (!(k0 > 0.0)) throw Error(Errc::invalid_parameter, "K0 must be > 0");
  if (c_over_a == 0.0) c_over_a = default_axial_ratio(name);
  const int dim = lattice_dimension(name);
  const double kp = k0 / M_PI;
  const double r3 = std::sqrt(3.0);
  double closed = 0.0;
  switch (name) {
    case LatticeName::chain:
      closed = k0 / kTwoPi;
      break;
    case LatticeName::square:
      closed = 0.25 * kp * kp;
      break;
    case LatticeName::triangular:
      closed = (r3 / 8.0) * kp * kp;
      break;
    case LatticeName::sc:
      closed = 0.125 * kp * kp * kp;
      break;
    case LatticeName::bcc:
      closed = kp * kp * kp / (8.0 * std::sqrt(2.0));
      break;
    case LatticeName::fcc:
      closed = kp * kp * kp / (6.0 * r3);
      break;
    case LatticeName::sh:
    case LatticeName::hcp: {
      // q = (2pi/a) min(2/sqrt3, 1/gamma); at q = K0 the in-plane and axial
      // shells tie exactly when gamma = sqrt(3)/2.
      const double gamma = c_over_a;
      const double m = std::min(2.0 / r3, 1.0 / gamma);
      closed = kp * kp * kp / (4.0 * r3 * gamma * m * m * m);
      if (name == LatticeName::hcp) closed *= 2.0;
      break;
    }
  }
  // independent route: build at unit scale, dilate until q = K0
  const PeriodicConfiguration cfg = named_lattice(name, 1.0, c_over_a);
  const double q1 = reciprocal(cfg.basis).shortest_norm;
  const double computed = cfg.density() * std::pow(k0 / q1, dim);
  return {closed, computed};
}

namespace {

// Nelder-Mead on R^n, good enough to polish the piecewise-smooth
// constrained-volume objective below.
template <class F>
double nelder_mead(F&& f, std::vector<double>& x, double spread, int iters) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> simplex(n + 1, x);
  std::vector<double> val(n + 1);
  for (std::size_t i = 1; i <= n; ++i) simplex[i][i - 1] += spread;
  for (std::size_t i = 0; i <= n; ++i) val[i] = f(simplex[i]);
  for (int it = 0; it < iters; ++it) {
    // order
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      v2[i] = val[idx[i]];
    }
    simplex = std::move(s2);
    val = std::move(v2);
    if (std::abs(val[n] - val[0]) <=
        1e-14 * (std::abs(val[0]) + std::abs(val[n])))
      break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return p;
    };
    std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    if (fr < val[0]) {
      std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        val[n] = fe;
      } else {
        simplex[n] = xr;
        val[n] = fr;
      }
    } else if (fr < val[n - 1]) {
      simplex[n] = xr;
      val[n] = fr;
    } else {
      std::vector<double> xc = blend(0.5);
      const double fc = f(xc);
      if (fc < val[n]) {
        simplex[n] = xc;
        val[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          val[i] = f(simplex[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (val[i] < val[best]) best = i;
  x = simplex[best];
  return val[best];
}

Mat3 basis_from_params(const std::vector<double>& p, int dim) {
  Mat3 m = Mat3::identity();
  if (dim == 1) {
    m[0][0] = p[0];
  } else if (dim == 2) {
    m[0] = {p[0], 0, 0};
    m[1] = {p[1], p[2], 0};
  } else {
    m[0] = {p[0], 0, 0};
    m[1] = {p[1], p[2], 0};
    m[2] = {p[3], p[4], p[5]};
  }
  return m;
}

}  // namespace

MinimalBravaisResult minimal_bravais_check(int dim, double k0,
                                           std::uint64_t seed, int restarts) {
  if (dim < 1 || dim > 3)
    throw Error(Errc::invalid_parameter, "dimension must be 1, 2 or 3");
  if (!(k0 > 0.0)) throw Error(Errc::invalid_parameter, "K0 must be > 0");
  const int nparam = dim * (dim + 1) / 2;

  // rho(B) = (2pi)^-d |det B*| once B* is dilated so its shortest vector
  // sits exactly at K0; the dilation is an exact projection, so the search
  // itself runs unconstrained over lower-triangular B* rows.
  const double det_floor = 1e-12 * std::pow(k0, dim);
  auto objective = [&](const std::vector<double>& p) {
    const Mat3 m = basis_from_params(p, dim);
    double d = std::abs(det(m, dim));
    if (d < det_floor) return 1e300;
    const double q = shortest_vector(m, dim).norm;
    if (!(q > 0.0)) return 1e300;
    double scaled = d;
    for (int i = 0; i < dim; ++i) scaled *= k0 / q;
    return scaled;
  };

  double best = 1e300;
  std::vector<double> best_p;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    std::vector<double> p(nparam);
    // diagonal entries near K0, off-diagonal modest
    if (dim == 1) {
      p[0] = k0 * rng.uniform(0.5, 1.5);
    } else if (dim == 2) {
      p[0] = k0 * rng.uniform(0.5, 1.5);
      p[1] = k0 * rng.uniform(-0.75, 0.75);
      p[2] = k0 * rng.uniform(0.5, 1.5);
    } else {
      p[0] = k0 * rng.uniform(0.5, 1.5);
      p[1] = k0 * rng.uniform(-0.75, 0.75);
      p[2] = k0 * rng.uniform(0.5, 1.5);
      p[3] = k0 * rng.uniform(-0.75, 0.75);
      p[4] = k0 * rng.uniform(-0.75, 0.75);
      p[5] = k0 * rng.uniform(0.5, 1.5);
    }
    double v = nelder_mead(objective, p, 0.2 * k0, 600);
    // polish with shrinking spreads
    for (double spread : {0.02 * k0, 0.002 * k0, 2e-4 * k0, 2e-5 * k0})
      v = nelder_mead(objective, p, spread, 400);
    if (v < best) {
      best = v;
      best_p = p;
    }
  }

  MinimalBravaisResult res;
  res.dim = dim;
  double inv = 1.0;
  for (int i = 0; i < dim; ++i) inv /= kTwoPi;
  res.density = best * inv;

  Mat3 m = basis_from_params(best_p, dim);
  const double q = shortest_vector(m, dim).norm;
  for (int i = 0; i < dim; ++i) m[i] *= k0 / q;
  res.reciprocal_generators = m;
  res.q = shortest_vector(m, dim).norm;
  if (std::abs(res.q - k0) > 1e-9 * k0)
    throw Error(Errc::optimizer_failed, "q constraint violated at optimum");

  const LatticeName expect = dim == 1   ? LatticeName::chain
                             : dim == 2 ? LatticeName::triangular
                                        : LatticeName::bcc;
  res.closed_form = threshold_density(expect, k0).closed_form;
  if (std::abs(res.density - res.closed_form) > 1e-6 * res.closed_form)
    throw Error(Errc::optimizer_failed,
                "minimal-density search did not reach the known threshold");
  res.name = expect;
  return res;
}

}  // namespace bandlim
