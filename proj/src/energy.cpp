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

#include "bandlim/energy.hpp"

#include <cmath>

#include "bandlim/error.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/summation.hpp"

namespace bandlim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

// Workspace for the phase kernels over one set of positions (SoA layout).
struct PhaseWorkspace {
  std::vector<double> f0, f1, f2;  // fractional coordinates
  std::vector<double> t, c, s;

  void load(const std::vector<Vec3>& fracs) {
    const std::size_t n = fracs.size();
    f0.resize(n);
    f1.resize(n);
    f2.resize(n);
    t.resize(n);
    c.resize(n);
    s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      f0[i] = fracs[i][0];
      f1[i] = fracs[i][1];
      f2[i] = fracs[i][2];
    }
  }

  // S(row) = sum_j e^{2 pi i row.f_j}
  void structure_factor(const std::array<int, 3>& row, double& re,
                        double& im) {
    const std::size_t n = f0.size();
    kernels::linear_phases(row[0], row[1], row[2], f0.data(), f1.data(),
                           f2.data(), t.data(), n);
    kernels::sincos_turns(t.data(), c.data(), s.data(), n);
    Kahan acc_re, acc_im;
    for (std::size_t i = 0; i < n; ++i) {
      acc_re.add(c[i]);
      acc_im.add(s[i]);
    }
    re = acc_re.value();
    im = acc_im.value();
  }
};

}  // namespace

DualBall::DualBall(const Mat3& dual_generators, int dim,
                   const SpectralProfile& profile) {
  const auto raw = enumerate_in_ball(dual_generators, dim, profile.cutoff());
  points_.reserve(raw.size());
  Kahan acc;
  for (const LatticePoint& p : raw) {
    DualPoint d;
    d.k = p.k;
    d.row = p.coeffs;
    d.norm = p.norm;
    d.phi_hat = profile(p.norm);
    points_.push_back(d);
    acc.add(d.phi_hat);
  }
  phi_hat_sum_ = acc.value();
}

double plateau_energy_density(const PairPotential& pot, double rho) {
  return 0.5 * rho * (rho * pot.phi_hat_zero() - pot.phi_zero());
}

EnergyReport energy_density(const PairPotential& pot,
                            const PeriodicConfiguration& config) {
  if (pot.dimension() != config.basis.dim)
    throw Error(Errc::invalid_parameter,
                "potential and configuration dimensions differ");
  const ReciprocalBasis rec = reciprocal(config.basis);
  const DualBall ball(rec.generators, config.basis.dim, pot.profile());

  EnergyReport rep;
  rep.density = config.density();
  rep.sublattice_density = config.basis.density();
  rep.k0_term = 0.5 * rep.density * rep.density * pot.phi_hat_zero();
  rep.phi0_term = -0.5 * pot.phi_zero() * rep.density;

  PhaseWorkspace ws;
  ws.load(config.offsets);
  const double rho_b = rep.sublattice_density;
  Kahan shell_sum;
  for (const DualPoint& p : ball.points()) {
    if (p.row == std::array<int, 3>{0, 0, 0}) continue;
    double re = 0.0, im = 0.0;
    ws.structure_factor(p.row, re, im);
    ShellTerm term;
    term.k_norm = p.norm;
    term.row = p.row;
    term.phi_hat = p.phi_hat;
    term.s2 = re * re + im * im;
    term.contribution = 0.5 * rho_b * rho_b * p.phi_hat * term.s2;
    shell_sum.add(term.contribution);
    rep.shells.push_back(term);
  }
  rep.energy_density = rep.k0_term + rep.phi0_term + shell_sum.value();
  return rep;
}

double periodized_potential(const PairPotential& pot, const PeriodCell& cell,
                            const Vec3& r_cartesian) {
  if (pot.dimension() != cell.basis.dim)
    throw Error(Errc::invalid_parameter,
                "potential and cell dimensions differ");
  const DualBall ball(cell.dual_matrix(), cell.basis.dim, pot.profile());
  const Mat3 inv = inverse(cell.cell_matrix(), cell.basis.dim);
  const Vec3 f = apply(r_cartesian, inv);
  // phases l.f with the integer dual rows l
  std::vector<Vec3> single{f};
  PhaseWorkspace ws;
  ws.load(single);
  Kahan acc;
  for (const DualPoint& p : ball.points()) {
    double re = 0.0, im = 0.0;
    ws.structure_factor(p.row, re, im);
    acc.add(p.phi_hat * re);  // the imaginary parts cancel pairwise over +-k
  }
  return acc.value() / cell.volume();
}

BoxEnergy box_energy(const PairPotential& pot, const PeriodCell& cell,
                     const DualBall& ball,
                     const std::vector<Vec3>& frac_positions) {
  const double volume = cell.volume();
  const double n = static_cast<double>(frac_positions.size());
  BoxEnergy out;
  out.n_points = static_cast<int>(frac_positions.size());
  out.self_term =
      n * (n * pot.phi_hat_zero() - ball.phi_hat_sum()) / (2.0 * volume);
  out.floor = out.self_term;
  if (frac_positions.empty()) {
    out.total = 0.0;
    out.self_term = 0.0;
    out.floor = 0.0;
    return out;
  }
  PhaseWorkspace ws;
  ws.load(frac_positions);
  out.s2.reserve(ball.size());
  Kahan acc;
  for (const DualPoint& p : ball.points()) {
    if (p.row == std::array<int, 3>{0, 0, 0}) {
      out.s2.push_back(n * n);
      continue;
    }
    double re = 0.0, im = 0.0;
    ws.structure_factor(p.row, re, im);
    const double s2 = re * re + im * im;
    out.s2.push_back(s2);
    acc.add(p.phi_hat * s2);
  }
  out.interaction_sum = acc.value() / (2.0 * volume);
  out.total = out.interaction_sum + out.self_term;
  return out;
}

BoxEnergy box_energy(const PairPotential& pot, const PeriodCell& cell,
                     const std::vector<Vec3>& frac_positions) {
  if (pot.dimension() != cell.basis.dim)
    throw Error(Errc::invalid_parameter,
                "potential and cell dimensions differ");
  const DualBall ball(cell.dual_matrix(), cell.basis.dim, pot.profile());
  return box_energy(pot, cell, ball, frac_positions);
}

std::vector<Vec3> configuration_in_cell(const PeriodicConfiguration& config,
                                        const std::array<int, 3>& multipliers) {
  const int dim = config.basis.dim;
  std::array<int, 3> l{1, 1, 1};
  for (int i = 0; i < dim; ++i) {
    if (multipliers[i] < 1)
      throw Error(Errc::invalid_parameter, "cell multipliers must be >= 1");
    l[i] = multipliers[i];
  }
  std::vector<Vec3> fracs;
  fracs.reserve(static_cast<std::size_t>(l[0]) * l[1] * l[2] *
                config.offsets.size());
  for (int i = 0; i < l[0]; ++i)
    for (int j = 0; j < l[1]; ++j)
      for (int k = 0; k < l[2]; ++k)
        for (const Vec3& y : config.offsets) {
          Vec3 f{(i + y[0]) / l[0], (j + y[1]) / l[1], (k + y[2]) / l[2]};
          for (int c = dim; c < 3; ++c) f[c] = 0.0;
          fracs.push_back(f);
        }
  return fracs;
}

FieldSample external_field(const PairPotential& pot,
                           const PeriodicConfiguration& config,
                           const Vec3& r_cartesian) {
  if (pot.dimension() != config.basis.dim)
    throw Error(Errc::invalid_parameter,
                "potential and configuration dimensions differ");
  const ReciprocalBasis rec = reciprocal(config.basis);
  const DualBall ball(rec.generators, config.basis.dim, pot.profile());
  const Mat3 inv = inverse(config.basis.generators, config.basis.dim);
  const Vec3 fr = apply(r_cartesian, inv);

  PhaseWorkspace offsets_ws;
  offsets_ws.load(config.offsets);
  std::vector<Vec3> single{fr};
  PhaseWorkspace r_ws;
  r_ws.load(single);

  Kahan acc;
  for (const DualPoint& p : ball.points()) {
    double ore = 0.0, oim = 0.0;
    offsets_ws.structure_factor(p.row, ore, oim);
    double rre = 0.0, rim = 0.0;
    r_ws.structure_factor(p.row, rre, rim);
    // Re[ e^{ik.r} conj(sum_j e^{ik.y_j}) ]
    acc.add(p.phi_hat * (rre * ore + rim * oim));
  }
  FieldSample out;
  out.value = acc.value() * config.basis.density();
  out.expected = config.density() * pot.phi_hat_zero();
  out.deviation = out.value - out.expected;
  return out;
}

double mu_lambda(const PairPotential& pot, const PeriodCell& cell, double mu) {
  const DualBall ball(cell.dual_matrix(), cell.basis.dim, pot.profile());
  return mu + 0.5 * (pot.phi_zero() - ball.phi_hat_sum() / cell.volume());
}

namespace {

// C^5 polynomial step: 0 at t = 0, 1 at t = 1, five vanishing derivatives
// at both ends. Its transform sidelobes fall off like (k W)^-7, which is
// what keeps the windowed lattice sum close to the windowed integral.
double smooth_step5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return (((((-252.0 * t + 1386.0) * t - 3080.0) * t + 3465.0) * t - 1980.0) *
              t +
          462.0) *
         t * t * t * t * t * t;
}

}  // namespace

OracleResult realspace_energy_density(const PairPotential& pot,
                                      const PeriodicConfiguration& config,
                                      double cutoff,
                                      const RadialInterpolant* table,
                                      double rel_tolerance,
                                      double window_inner_fraction) {
  if (!(cutoff > 0.0))
    throw Error(Errc::invalid_parameter, "cutoff must be > 0");
  if (window_inner_fraction < 0.0 || window_inner_fraction >= 1.0)
    throw Error(Errc::invalid_parameter,
                "window inner fraction must lie in [0, 1)");
  const int dim = config.basis.dim;
  const double rho_b = config.basis.density();
  const int j = config.point_count();

  auto phi = [&](double r) -> double {
    if (table && r <= table->r_max()) return (*table)(r);
    return pot(r);
  };
  // Smooth profiles (super-algebraic decay) get a smooth truncation window
  // plus the continuum completion of the tail; algebraic families keep the
  // plain hard cutoff, where the completion integral would converge slower
  // than the lattice sum it replaces.
  const ProfileKind kind = pot.profile().kind();
  const bool smooth_mode =
      kind == ProfileKind::tabulated || kind == ProfileKind::mollified;
  const double inner =
      smooth_mode ? window_inner_fraction * cutoff : cutoff;
  const double width = cutoff - inner;
  auto window = [&](double r) {
    return smooth_mode ? smooth_step5((cutoff - r) / width) : 1.0;
  };

  // images v of the sublattice with |v + delta| <= cutoff
  const auto images = enumerate_in_ball(
      config.basis.generators, dim,
      cutoff + 2.0 * std::sqrt(static_cast<double>(dim)) *
                   std::max({norm(config.basis.generators[0]),
                             norm(config.basis.generators[1]),
                             norm(config.basis.generators[2])}));

  Kahan acc;
  long terms = 0;
  const double cut2 = cutoff * cutoff;
  for (int a = 0; a < j; ++a)
    for (int b = 0; b < j; ++b) {
      const Vec3 delta =
          config.offset_cartesian(a) - config.offset_cartesian(b);
      for (const LatticePoint& p : images) {
        if (a == b && p.coeffs == std::array<int, 3>{0, 0, 0}) continue;
        const Vec3 u = p.k + delta;
        const double d2 = norm2(u);
        if (d2 > cut2) continue;
        const double d = std::sqrt(d2);
        acc.add(phi(d) * window(d));
        ++terms;
      }
    }
  OracleResult out;
  out.cutoff = cutoff;
  out.pair_terms = terms;
  // e = (rho_B/2) sum_{a,b} sum'_{v in B} phi w (v + y_a - y_b)
  out.truncated_sum = 0.5 * rho_b * acc.value();

  double surface = 2.0;
  if (dim == 2) surface = kTwoPi;
  if (dim == 3) surface = 2.0 * kTwoPi;

  const double rho_x = config.density();
  const PairPotential::Envelope& env = pot.envelope();
  if (smooth_mode) {
    // Continuum completion: the windowed pair sums miss
    // sum_v phi (1 - w) = rho_B int phi (1 - w) + fluctuation, and the full
    // integral of phi is phi_hat(0). The windowed ball integral is a plain
    // radial quadrature of phi itself.
    const int panels =
        16 + static_cast<int>(std::ceil(pot.cutoff() * cutoff / M_PI));
    const double windowed_integral =
        surface * integrate(
                      [&](double r) {
                        double w = phi(r) * window(r);
                        for (int e = 1; e < dim; ++e) w *= r;
                        return w;
                      },
                      0.0, cutoff, panels);
    out.continuum_tail =
        0.5 * rho_x * rho_x * (pot.phi_hat_zero() - windowed_integral);
    out.energy_density = out.truncated_sum + out.continuum_tail;

    // Fluctuation bound: envelope mass in the transition shell attenuated
    // by the window's spectral falloff at the band edge.
    const double transition_mass =
        surface * integrate(
                      [&](double r) {
                        double w = env.amplitude * std::pow(r, -env.power);
                        for (int e = 1; e < dim; ++e) w *= r;
                        return w;
                      },
                      inner, cutoff, 32);
    const double kw = pot.cutoff() * width / kTwoPi;
    const double attenuation =
        std::min(1.0, std::pow(std::max(kw, 1.0), -7.0));
    out.tail_bound = 16.0 * rho_x * rho_x * transition_mass * attenuation +
                     1e-13 * std::abs(out.energy_density);
  } else {
    out.energy_density = out.truncated_sum;
    const double tail_integral = surface * env.amplitude *
                                 std::pow(cutoff, dim - env.power) /
                                 (env.power - dim);
    out.tail_bound = 0.5 * rho_x * rho_x * tail_integral;
  }
  if (rel_tolerance > 0.0) {
    const double scale = std::max(std::abs(out.energy_density), 1e-300);
    if (out.tail_bound > rel_tolerance * scale)
      throw Error(Errc::tolerance_unreachable,
                  "real-space tail bound exceeds the requested tolerance");
  }
  return out;
}

}  // namespace bandlim
