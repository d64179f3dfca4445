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

#include "bandlim/spectral_profile.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/error.hpp"
#include "bandlim/quadrature.hpp"

namespace bandlim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

// Surface area of the unit sphere in d dimensions (d = 1: two points).
double sphere_surface(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return kTwoPi;
    default: return 2.0 * kTwoPi;
  }
}

void check_dimension(int dim) {
  if (dim < 1 || dim > 3)
    throw Error(Errc::invalid_parameter, "dimension must be 1, 2 or 3");
}

void check_cutoff(double k0) {
  if (!(k0 > 0.0))
    throw Error(Errc::invalid_parameter, "cutoff K0 must be positive");
}

// The C-infinity bump exp[-(1 - u^2/eps^2)^-1] on (-eps, eps).
double bump(double u, double eps) {
  const double s = u / eps;
  const double d = 1.0 - s * s;
  if (d <= 0.0) return 0.0;
  return std::exp(-1.0 / d);
}

}  // namespace

const char* profile_kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::polynomial: return "polynomial";
    case ProfileKind::piecewise: return "piecewise";
    case ProfileKind::tabulated: return "tabulated";
    case ProfileKind::mollified: return "mollified";
  }
  return "unknown";
}

ProfileKind profile_kind_from_name(const std::string& name) {
  if (name == "polynomial") return ProfileKind::polynomial;
  if (name == "piecewise") return ProfileKind::piecewise;
  if (name == "tabulated") return ProfileKind::tabulated;
  if (name == "mollified") return ProfileKind::mollified;
  throw Error(Errc::invalid_parameter, "unknown profile kind: " + name);
}

double SpectralProfile::operator()(double k) const {
  k = std::abs(k);
  if (k >= k0_) return 0.0;
  switch (kind_) {
    case ProfileKind::polynomial:
      return poly_eval(poly_, k);
    case ProfileKind::piecewise: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), k);
      std::size_t j = (it == breaks_.begin())
                          ? 0
                          : static_cast<std::size_t>(it - breaks_.begin()) - 1;
      if (j >= pieces_.size()) j = pieces_.size() - 1;
      return poly_eval(pieces_[j], k - breaks_[j]);
    }
    case ProfileKind::tabulated:
    case ProfileKind::mollified: {
      const std::size_t n = samples_.size();
      const double h = k0_ / static_cast<double>(n - 1);
      const double x = k / h;
      std::size_t i = static_cast<std::size_t>(x);
      if (i >= n - 1) i = n - 2;
      const double w = x - static_cast<double>(i);
      return samples_[i] * (1.0 - w) + samples_[i + 1] * w;
    }
  }
  return 0.0;
}

double SpectralProfile::radial_moment(int m) const {
  switch (kind_) {
    case ProfileKind::polynomial:
      return poly_moment(poly_, m, k0_);
    case ProfileKind::piecewise: {
      double total = 0.0;
      for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const double a = breaks_[j];
        const double b = breaks_[j + 1];
        // integral over [a,b] of (k)^m p(k-a) dk; expand k^m = (u+a)^m
        // binomially (m <= 2 in practice, but handle any small m).
        const Poly& p = pieces_[j];
        double piece = 0.0;
        double binom = 1.0;
        double apow = 1.0;
        std::vector<double> apows(m + 1, 1.0);
        for (int l = 1; l <= m; ++l) apows[l] = apows[l - 1] * a;
        for (int l = m; l >= 0; --l) {
          // binom(m, l) a^{m-l} * integral u^l p(u) du over [0, b-a]
          piece += binom * apows[m - l] * poly_moment(p, l, b - a);
          binom = binom * l / (m - l + 1.0);
        }
        (void)apow;
        total += piece;
      }
      return total;
    }
    case ProfileKind::tabulated:
    case ProfileKind::mollified: {
      // Per-segment exact integral of the linear interpolant times k^m.
      const std::size_t n = samples_.size();
      const double h = k0_ / static_cast<double>(n - 1);
      Kahan acc;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = i * h;
        const double y0 = samples_[i];
        const double slope = (samples_[i + 1] - y0) / h;
        // integral (y0 + slope (k-a)) k^m dk over [a, a+h]
        double im0 = 0.0, im1 = 0.0;  // k^m and k^{m+1} integrals
        const double b = a + h;
        double bp = b, ap = a;
        for (int j = 0; j < m; ++j) {
          bp *= b;
          ap *= a;
        }
        im0 = (bp - ap) / (m + 1);
        im1 = (bp * b - ap * a) / (m + 2);
        acc.add(y0 * im0 + slope * (im1 - a * im0));
      }
      return acc.value();
    }
  }
  return 0.0;
}

double SpectralProfile::phi_zero() const {
  const double surf = sphere_surface(dim_);
  double inv = 1.0;
  for (int i = 0; i < dim_; ++i) inv /= kTwoPi;
  return inv * surf * radial_moment(dim_ - 1);
}

void SpectralProfile::validate_nonnegative() const {
  const int n = 4096;
  double max_abs = 0.0;
  for (int i = 0; i <= n; ++i)
    max_abs = std::max(max_abs, std::abs((*this)(k0_ * i / n)));
  const double floor = -1e-12 * std::max(max_abs, 1e-300);
  for (int i = 0; i <= n; ++i) {
    const double k = k0_ * i / n;
    if ((*this)(k) < floor)
      throw Error(Errc::invalid_profile,
                  "profile is negative at k = " + std::to_string(k));
  }
}

SpectralProfile SpectralProfile::make_polynomial(int dim, double k0,
                                                 Poly coeffs) {
  check_dimension(dim);
  check_cutoff(k0);
  if (coeffs.empty()) coeffs.push_back(0.0);
  SpectralProfile p;
  p.dim_ = dim;
  p.k0_ = k0;
  p.kind_ = ProfileKind::polynomial;
  p.poly_ = std::move(coeffs);
  p.phi_hat_zero_ = p.poly_[0];
  p.validate_nonnegative();
  return p;
}

SpectralProfile SpectralProfile::make_piecewise(int dim, double k0,
                                                std::vector<double> breaks,
                                                std::vector<Poly> pieces) {
  check_dimension(dim);
  check_cutoff(k0);
  if (breaks.size() != pieces.size() + 1 || pieces.empty())
    throw Error(Errc::invalid_parameter,
                "piecewise profile needs n+1 breakpoints for n pieces");
  if (breaks.front() != 0.0 || std::abs(breaks.back() - k0) > 1e-12 * k0)
    throw Error(Errc::invalid_parameter,
                "piecewise breakpoints must span [0, K0]");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      throw Error(Errc::invalid_parameter, "breakpoints must increase");
  SpectralProfile p;
  p.dim_ = dim;
  p.k0_ = k0;
  p.kind_ = ProfileKind::piecewise;
  p.breaks_ = std::move(breaks);
  p.pieces_ = std::move(pieces);
  p.phi_hat_zero_ = poly_eval(p.pieces_[0], 0.0);
  p.validate_nonnegative();
  return p;
}

SpectralProfile SpectralProfile::make_tabulated(int dim, double k0,
                                                std::vector<double> samples) {
  check_dimension(dim);
  check_cutoff(k0);
  if (samples.size() < 2)
    throw Error(Errc::invalid_parameter, "need at least two samples");
  SpectralProfile p;
  p.dim_ = dim;
  p.k0_ = k0;
  p.kind_ = ProfileKind::tabulated;
  p.samples_ = std::move(samples);
  p.phi_hat_zero_ = p.samples_[0];
  p.validate_nonnegative();
  return p;
}

SpectralProfile SpectralProfile::make_mollified_samples(
    int dim, double k0, double eps, std::vector<double> samples) {
  SpectralProfile p = make_tabulated(dim, k0, std::move(samples));
  p.kind_ = ProfileKind::mollified;
  p.eps_ = eps;
  return p;
}

SpectralProfile SpectralProfile::triangle(double k0) {
  return make_polynomial(1, k0, Poly{k0, -1.0});
}

SpectralProfile build_mollified(const std::function<double(double)>& g,
                                double eps, double k0, int dim,
                                int grid_points) {
  check_dimension(dim);
  check_cutoff(k0);
  if (!(eps > 0.0) || eps >= k0)
    throw Error(Errc::invalid_parameter,
                "mollifier width must satisfy 0 < eps < K0");
  if (grid_points < 16)
    throw Error(Errc::invalid_parameter, "mollified grid too coarse");
  const double gmax = k0 - eps;

  {  // reject negative g up front
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
      const double s = gmax * i / n;
      if (g(s) < 0.0)
        throw Error(Errc::invalid_profile,
                    "base profile g is negative at k = " + std::to_string(s));
    }
  }

  std::vector<double> samples(grid_points, 0.0);
  const double h = k0 / static_cast<double>(grid_points - 1);

  if (dim == 1) {
    // phi_hat(k) = int_0^{gmax} g(s) [eta(k-s) + eta(k+s)] ds
    auto convolve = [&](double k) {
      double total = 0.0;
      // eta(k-s): s in [k-eps, k+eps]
      {
        const double lo = std::max(0.0, k - eps);
        const double hi = std::min(gmax, k + eps);
        if (hi > lo)
          total += integrate(
              [&](double s) { return g(s) * bump(k - s, eps); }, lo, hi, 32);
      }
      // eta(k+s): s in [-eps-k, eps-k], clipped to s >= 0
      {
        const double hi = std::min(gmax, eps - k);
        if (hi > 0.0)
          total += integrate(
              [&](double s) { return g(s) * bump(k + s, eps); }, 0.0, hi, 32);
      }
      return total;
    };
    for (int i = 0; i < grid_points; ++i) samples[i] = convolve(i * h);
  } else if (dim == 2) {
    // phi_hat(k) = int g(s) s int_0^{2pi} eta(|k e_x - s u(theta)|) dtheta ds
    const int ntheta = 64;
    auto ring = [&](double k, double s) {
      double acc = 0.0;
      for (int j = 0; j < ntheta; ++j) {
        const double th = kTwoPi * (j + 0.5) / ntheta;
        const double dist2 = k * k + s * s - 2.0 * k * s * std::cos(th);
        acc += bump(std::sqrt(std::max(0.0, dist2)), eps);
      }
      return acc * (kTwoPi / ntheta);
    };
    for (int i = 0; i < grid_points; ++i) {
      const double k = i * h;
      const double lo = std::max(0.0, k - eps);
      const double hi = std::min(gmax, k + eps);
      if (hi > lo)
        samples[i] = integrate(
            [&](double s) { return g(s) * s * ring(k, s); }, lo, hi, 48, 8);
    }
  } else {
    // Radial 3D convolution via H(u) = int_0^u t eta(t) dt:
    //   phi_hat(k) = (2 pi / k) int g(s) s [H(k+s) - H(|k-s|)] ds.
    const int hn = 4096;
    std::vector<double> hval(hn + 1, 0.0);
    const double hh = eps / hn;
    Kahan acc;
    for (int i = 0; i < hn; ++i) {
      acc.add(integrate([&](double t) { return t * bump(t, eps); }, i * hh,
                        (i + 1) * hh, 1, 8));
      hval[i + 1] = acc.value();
    }
    auto bigH = [&](double u) {
      u = std::abs(u);
      if (u >= eps) return hval[hn];
      const double x = u / hh;
      std::size_t i = static_cast<std::size_t>(x);
      if (i >= static_cast<std::size_t>(hn)) i = hn - 1;
      const double w = x - static_cast<double>(i);
      // cubic Hermite with exact derivative H'(u) = u eta(u)
      const double d0 = (i * hh) * bump(i * hh, eps);
      const double d1 = ((i + 1) * hh) * bump((i + 1) * hh, eps);
      const double y0 = hval[i], y1 = hval[i + 1];
      const double w2 = w * w, w3 = w2 * w;
      return (2 * w3 - 3 * w2 + 1) * y0 + (w3 - 2 * w2 + w) * hh * d0 +
             (-2 * w3 + 3 * w2) * y1 + (w3 - w2) * hh * d1;
    };
    for (int i = 0; i < grid_points; ++i) {
      const double k = i * h;
      if (i == 0) {
        samples[0] =
            2.0 * kTwoPi *
            integrate([&](double s) { return g(s) * s * s * bump(s, eps); },
                      0.0, std::min(gmax, eps), 32);
        continue;
      }
      const double lo = std::max(0.0, k - eps);
      const double hi = std::min(gmax, k + eps);
      if (hi > lo)
        samples[i] =
            (kTwoPi / k) *
            integrate(
                [&](double s) {
                  return g(s) * s * (bigH(k + s) - bigH(std::abs(k - s)));
                },
                lo, hi, 64);
    }
  }

  for (double& v : samples)
    if (v < 0.0) v = 0.0;  // clip quadrature noise at the support edge

  SpectralProfile p;
  p.dim_ = dim;
  p.k0_ = k0;
  p.kind_ = ProfileKind::mollified;
  p.eps_ = eps;
  p.samples_ = std::move(samples);
  p.phi_hat_zero_ = p.samples_[0];
  return p;
}

SpectralProfile build_longrange_3d(Poly f_coeffs, double k0) {
  check_cutoff(k0);
  if (f_coeffs.empty())
    throw Error(Errc::invalid_parameter, "empty polynomial");
  double scale = 0.0;
  for (int i = 0; i <= 2048; ++i)
    scale = std::max(scale, std::abs(poly_eval(f_coeffs, k0 * i / 2048)));
  const double tol = 1e-10 * std::max(scale, 1e-300);
  const Poly df = poly_derivative(f_coeffs);
  if (std::abs(poly_eval(f_coeffs, k0)) > tol)
    throw Error(Errc::constraint_violation, "f(K0) must vanish");
  if (std::abs(poly_eval(df, k0)) > tol)
    throw Error(Errc::constraint_violation, "f'(K0) must vanish");
  SpectralProfile p = SpectralProfile::make_polynomial(3, k0, std::move(f_coeffs));
  return p;
}

SpectralProfile mollified_flat_profile(double k0, int dim,
                                       double support_factor,
                                       double eps_factor, int grid_points) {
  check_cutoff(k0);
  if (!(support_factor > 0.0) || support_factor > 1.0)
    throw Error(Errc::invalid_parameter, "support factor must be in (0, 1]");
  const double edge = support_factor * k0;
  const SpectralProfile base = build_mollified(
      [](double) { return 1.0; }, eps_factor * edge, edge, dim, grid_points);
  if (support_factor == 1.0) return base;
  // resample onto the declared band [0, K0]
  std::vector<double> samples(grid_points, 0.0);
  for (int i = 0; i < grid_points; ++i)
    samples[i] = base(k0 * i / (grid_points - 1));
  return SpectralProfile::make_mollified_samples(dim, k0, eps_factor * edge,
                                                 std::move(samples));
}

SpectralProfile mollified_bump_profile(double k0, int dim, int grid_points,
                                       double support_factor) {
  check_cutoff(k0);
  if (!(support_factor > 0.0) || support_factor > 1.0)
    throw Error(Errc::invalid_parameter, "support factor must be in (0, 1]");
  const double edge = support_factor * k0;
  const double eps = 0.5 * edge;
  const double gw = 0.5 * edge;  // base bump on [0, edge - eps]
  return build_mollified([gw](double s) { return bump(s, gw); }, eps, k0, dim,
                         grid_points);
}

SpectralProfile longrange_example_3d(double k0) {
  // (k + z)(k + conj z) = k^2 + 0.2 K0 k + 0.1 K0^2 with z = (K0/10)(1+3i)
  const Poly quad{0.1 * k0 * k0, 0.2 * k0, 1.0};
  const Poly tail{k0 * k0, -2.0 * k0, 1.0};  // (k - K0)^2
  Poly f = poly_mul(quad, tail);
  const double pi2 = M_PI * M_PI;
  for (double& c : f) c *= pi2;
  return build_longrange_3d(std::move(f), k0);
}

}  // namespace bandlim
