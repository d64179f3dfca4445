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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bandlim/energy.hpp"
#include "bandlim/error.hpp"
#include "bandlim/rng.hpp"
#include "bandlim/summation.hpp"
#include "bandlim/thermo.hpp"

using namespace bandlim;

namespace {

constexpr double kTwoPi = 6.283185307179586476925;
const double kK0 = kTwoPi;

double rho3(double k0) {
  return std::pow(k0 / M_PI, 3.0) / (8.0 * std::sqrt(2.0));
}

const PairPotential& stock_potential() {
  static PairPotential pot(longrange_example_3d(kK0));
  return pot;
}

const PairPotential& soft_potential() {
  static PairPotential pot(mollified_bump_profile(kK0, 3, 8192));
  return pot;
}

}  // namespace

TEST_CASE("periodized potential: zero profile and single-shell cells") {
  const PairPotential zero(SpectralProfile::make_polynomial(3, kK0, {0.0}));
  PeriodCell cell{named_lattice(LatticeName::sc, 1.0).basis, {1, 1, 1}};
  CHECK(periodized_potential(zero, cell, Vec3{0.3, 0.1, 0.0}) == 0.0);

  // sc cell slightly tighter than 2pi/K0: every nonzero dual point sits
  // outside the band and the periodization is flat, V^-1 phi_hat(0)
  const double a = (kTwoPi / kK0) * (1.0 - 0.01);
  PeriodCell tight{named_lattice(LatticeName::sc, a).basis, {1, 1, 1}};
  const PairPotential& pot = stock_potential();
  const double expected = pot.phi_hat_zero() / tight.volume();
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const Vec3 r{rng.uniform(), rng.uniform(), rng.uniform()};
    CHECK(periodized_potential(pot, tight, r) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("periodized potential equals the truncated real-space image sum") {
  const PairPotential& pot = soft_potential();
  // by 100/K0 the smooth profile's transform is dead to ~1e-10, so a plain
  // hard truncation of the image sum converges
  const double cutoff = 100.0 / kK0;
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    // random smallish sc-like cell with mild skew
    LatticeBasis basis;
    basis.dim = 3;
    basis.generators = Mat3::identity();
    for (int i = 0; i < 3; ++i) {
      basis.generators[i][i] = rng.uniform(0.9, 1.4);
      basis.generators[i][(i + 1) % 3] = rng.uniform(-0.2, 0.2);
    }
    PeriodCell cell{basis, {1 + static_cast<int>(rng.below(2)),
                            1 + static_cast<int>(rng.below(2)), 1}};
    const Vec3 r{rng.uniform(), rng.uniform(), rng.uniform()};
    const double fourier = periodized_potential(pot, cell, r);

    Kahan acc;
    const auto wide = enumerate_in_ball(cell.cell_matrix(), 3, cutoff + 2.5);
    for (const auto& img : wide) {
      const double d = norm(r + img.k);
      if (d <= cutoff) acc.add(pot(d));
    }
    CHECK(fourier == doctest::Approx(acc.value())
                         .epsilon(1e-6)
                         .scale(std::abs(pot.phi_zero())));
  }
}

TEST_CASE("box energy: empty and single-particle cells") {
  const PairPotential& pot = stock_potential();
  PeriodCell cell{named_lattice(LatticeName::sc, 1.1).basis, {2, 2, 2}};
  CHECK(box_energy(pot, cell, {}).total == 0.0);

  // one particle: no pairs, so U_Lambda is zero up to rounding; the
  // structure part exactly cancels the self term
  const BoxEnergy one = box_energy(pot, cell, {Vec3{0.23, 0.71, 0.05}});
  CHECK(std::abs(one.total) <= 1e-12 * std::abs(one.interaction_sum));
  CHECK(one.interaction_sum >= 0.0);

  // the image self-interaction (1/2)[phi_L(0) - phi(0)] is a real-space
  // sum; checked with the fast-decaying profile where truncation converges
  const PairPotential& soft = soft_potential();
  const double self_images =
      0.5 * (periodized_potential(soft, cell, Vec3{}) - soft.phi_zero());
  Kahan direct;
  const auto images = enumerate_in_ball(cell.cell_matrix(), 3, 100.0 / kK0);
  for (const auto& img : images)
    if (img.norm > 0.0) direct.add(soft(img.norm));
  CHECK(self_images ==
        doctest::Approx(0.5 * direct.value())
            .epsilon(5e-7)
            .scale(std::abs(soft.phi_zero())));
}

TEST_CASE("box energy reaches the floor on admissible lattice points") {
  const PairPotential& pot = stock_potential();
  const PeriodicConfiguration bcc =
      scale_to_density(named_lattice(LatticeName::bcc, 1.0), 2.0 * rho3(kK0));
  PeriodCell cell{bcc.basis, {2, 2, 4}};
  const auto fracs = configuration_in_cell(bcc, {2, 2, 4});
  CHECK(fracs.size() == 16);
  const BoxEnergy e = box_energy(pot, cell, fracs);
  // perfect destructive interference on every in-ball shell
  CHECK(e.interaction_sum >= 0.0);
  CHECK(e.interaction_sum <= 1e-18 * std::abs(e.floor));
  CHECK(e.total == doctest::Approx(e.floor).epsilon(1e-14));
  // the explicit floor formula
  const double v = cell.volume();
  const DualBall ball(cell.dual_matrix(), 3, pot.profile());
  const double n = 16.0;
  CHECK(e.floor ==
        doctest::Approx(n * (n * pot.phi_hat_zero() - ball.phi_hat_sum()) /
                        (2.0 * v))
            .epsilon(1e-14));
}

TEST_CASE("energy density: plateau at and above the threshold") {
  const PairPotential& pot = stock_potential();
  const double r3 = rho3(kK0);

  // bcc at rho_3: only k = 0 contributes
  const PeriodicConfiguration bcc =
      scale_to_density(named_lattice(LatticeName::bcc, 1.0), r3);
  const EnergyReport rep = energy_density(pot, bcc);
  CHECK(rep.shells.empty());
  CHECK(rep.energy_density ==
        doctest::Approx(plateau_energy_density(pot, r3)).epsilon(1e-12));

  // fcc compressed to the bcc threshold lies strictly above the plateau
  const PeriodicConfiguration fcc =
      scale_to_density(named_lattice(LatticeName::fcc, 1.0), r3);
  const EnergyReport fcc_rep = energy_density(pot, fcc);
  CHECK(!fcc_rep.shells.empty());
  CHECK(fcc_rep.energy_density >
        plateau_energy_density(pot, r3) + 1e-6 * std::abs(rep.energy_density));

  // report internal consistency: parts sum to the total
  Kahan parts;
  parts.add(fcc_rep.k0_term);
  parts.add(fcc_rep.phi0_term);
  for (const ShellTerm& s : fcc_rep.shells) parts.add(s.contribution);
  CHECK(fcc_rep.energy_density ==
        doctest::Approx(parts.value())
            .epsilon(1e-12)
            .scale(std::abs(fcc_rep.energy_density)));
  for (const ShellTerm& s : fcc_rep.shells) CHECK(s.k_norm < kK0);
}

TEST_CASE("offsets do not shift the plateau (continuous degeneracy)") {
  const PairPotential& pot = stock_potential();
  Rng rng(73);
  const double rho = 1.7 * rho3(kK0);
  PeriodicConfiguration base =
      scale_to_density(named_lattice(LatticeName::bcc, 1.0), rho);
  for (int j = 0; j < 3; ++j) {
    base.offsets.push_back(
        Vec3{rng.uniform(), rng.uniform(), rng.uniform()});
  }
  // underlying B kept admissible; rho(X) = J rho(B)
  const EnergyReport rep = energy_density(pot, base);
  const double expect = plateau_energy_density(pot, base.density());
  CHECK(rep.energy_density ==
        doctest::Approx(expect).epsilon(1e-12).scale(std::abs(expect)));
}

TEST_CASE("energy density agrees with the periodized cell identity") {
  // e(X) = U_L(X cap L)/V + (rho/2)(phi_L(0) - phi(0))
  const PairPotential& pot = stock_potential();
  const PeriodicConfiguration bcc =
      scale_to_density(named_lattice(LatticeName::bcc, 1.0), 1.31 * rho3(kK0));
  const std::array<int, 3> l{2, 2, 2};
  PeriodCell cell{bcc.basis, l};
  const BoxEnergy box = box_energy(pot, cell, configuration_in_cell(bcc, l));
  const double phi_l0 = periodized_potential(pot, cell, Vec3{});
  const double rho = bcc.density();
  const double via_box =
      box.total / cell.volume() + 0.5 * rho * (phi_l0 - pot.phi_zero());
  const double direct = energy_density(pot, bcc).energy_density;
  CHECK(via_box ==
        doctest::Approx(direct).epsilon(1e-12).scale(std::abs(direct)));
}

TEST_CASE("real-space oracle matches the reciprocal route") {
  const PairPotential& pot = soft_potential();
  const double cutoff = 40.0 / kK0;
  const RadialInterpolant table(pot, cutoff * 1.02);

  for (double factor : {1.0, 1.35}) {
    const PeriodicConfiguration bcc = scale_to_density(
        named_lattice(LatticeName::bcc, 1.0), factor * rho3(kK0));
    const OracleResult oracle =
        realspace_energy_density(pot, bcc, cutoff, &table);
    const double recip = energy_density(pot, bcc).energy_density;
    const double err = std::abs(oracle.energy_density - recip);
    CHECK(err <= oracle.tail_bound + 1e-6 * std::abs(recip));
  }
}

TEST_CASE("1D chain at the threshold: both routes give zero energy density") {
  const PairPotential tri(SpectralProfile::triangle(kK0));
  const double rho1 = kK0 / kTwoPi;
  const PeriodicConfiguration chain =
      scale_to_density(named_lattice(LatticeName::chain, 1.0), rho1);
  const double recip = energy_density(tri, chain).energy_density;
  const double scale = 0.5 * rho1 * rho1 * kK0;
  CHECK(std::abs(recip) <= 1e-12 * scale);
  // phi vanishes identically on the chain sites, so the image sum is zero
  const OracleResult oracle = realspace_energy_density(tri, chain, 60.0 / kK0);
  CHECK(std::abs(oracle.energy_density) <= 1e-9 * scale);
}

TEST_CASE("external field is flat for admissible configurations") {
  const PairPotential& pot = stock_potential();
  const PeriodicConfiguration bcc =
      scale_to_density(named_lattice(LatticeName::bcc, 1.0), rho3(kK0));
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const Vec3 r{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                 rng.uniform(-2.0, 2.0)};
    const FieldSample f = external_field(pot, bcc, r);
    CHECK(std::abs(f.deviation) <= 1e-10 * std::abs(f.expected));
  }

  // below its own threshold the fcc field has a genuine plane-wave ripple
  const PeriodicConfiguration fcc =
      scale_to_density(named_lattice(LatticeName::fcc, 1.0), rho3(kK0));
  double max_dev = 0.0;
  for (int i = 0; i < 32; ++i) {
    const Vec3 r{rng.uniform(), rng.uniform(), rng.uniform()};
    max_dev = std::max(max_dev,
                       std::abs(external_field(pot, fcc, r).deviation));
  }
  CHECK(max_dev > 1e-4 * pot.phi_hat_zero());

  const PairPotential zero(SpectralProfile::make_polynomial(3, kK0, {0.0}));
  CHECK(external_field(zero, bcc, Vec3{0.1, 0.2, 0.3}).value == 0.0);
}

TEST_CASE("mu_lambda: exact cases and convergence in the cell size") {
  const PairPotential zero(SpectralProfile::make_polynomial(3, kK0, {0.0}));
  PeriodCell unit{named_lattice(LatticeName::sc, 1.0).basis, {1, 1, 1}};
  CHECK(mu_lambda(zero, unit, 0.37) == doctest::Approx(0.37).epsilon(1e-15));

  const PairPotential& pot = stock_potential();
  // single sc cell at the threshold spacing: only k = 0 in the dual ball
  PeriodCell tight{named_lattice(LatticeName::sc, kTwoPi / kK0).basis,
                   {1, 1, 1}};
  const double mu = -1.2;
  CHECK(mu_lambda(pot, tight, mu) ==
        doctest::Approx(mu + 0.5 * (pot.phi_zero() -
                                    pot.phi_hat_zero() / tight.volume()))
            .epsilon(1e-13));

  // the Riemann error decays with the cell size; the long-range family
  // oscillates with cos(K0 L a) on the way down, the smooth one is monotone
  double first = 0.0, last = 0.0;
  for (int l : {1, 2, 4, 8}) {
    PeriodCell cell{named_lattice(LatticeName::sc, 1.1).basis, {l, l, l}};
    last = std::abs(mu_lambda(pot, cell, mu) - mu);
    if (l == 1) first = last;
  }
  CHECK(last < 2e-4 * first);

  const PairPotential& soft = soft_potential();
  double prev = 1e300;
  for (int l : {2, 4, 6, 8}) {
    PeriodCell cell{named_lattice(LatticeName::sc, 1.1).basis, {l, l, l}};
    const double err = std::abs(mu_lambda(soft, cell, mu) - mu);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("thermodynamic identities") {
  // raw closed forms
  CHECK(ground_state_e_rho(1.0, 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(mu_of_density(1.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(ground_state_e_mu(1.0, 1.0, 0.0) == doctest::Approx(-0.5));
  CHECK(ground_state_e_rho(0.0, 3.0, 1.0) == 0.0);

  const PairPotential& pot = stock_potential();
  const double rho = rho3(kK0) * 1.4;
  const Thermodynamics t = thermodynamics_at_density(pot, rho);
  // the pair (rho, mu) closes the linear relation
  CHECK(t.mu + 0.5 * t.phi_zero - t.phi_hat_zero * t.rho ==
        doctest::Approx(0.0).scale(std::abs(t.mu)).epsilon(1e-13));
  // round trip through mu
  const Thermodynamics back = thermodynamics_at_mu(pot, t.mu);
  CHECK(back.rho == doctest::Approx(rho).epsilon(1e-13));

  const LegendreReport rep = legendre_check(pot, rho);
  CHECK(rep.max_rel_error < 1e-6);
  CHECK(rep.mu_star_grid ==
        doctest::Approx(rep.mu_star_analytic).epsilon(1e-2));

  // the stock example admits muGSCs at mu = 0
  CHECK(pot.phi_zero() / (2.0 * pot.phi_hat_zero()) > rho3(kK0));

  const PairPotential zero(SpectralProfile::make_polynomial(3, kK0, {0.0}));
  CHECK_THROWS_AS(legendre_check(zero, 1.0), Error);
}
