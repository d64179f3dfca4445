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

#include "bandlim/error.hpp"
#include "bandlim/thermo.hpp"
#include "bandlim/verifier.hpp"

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

// flat-base mollified: keeps real weight near the band edge, so shells of
// slightly inadmissible lattices still cost visible energy
const PairPotential& flat_potential() {
  static PairPotential pot(
      build_mollified([](double) { return 1.0; }, 0.5 * kK0, kK0, 3, 4096));
  return pot;
}

PeriodicConfiguration bcc_at(double rho) {
  return scale_to_density(named_lattice(LatticeName::bcc, 1.0), rho);
}

}  // namespace

TEST_CASE("canonical perturbations never undercut the reference") {
  const PairPotential& pot = stock_potential();
  PerturbationOptions opt;
  opt.mode = EnsembleMode::canonical;
  opt.trials = 400;
  opt.seed = 11;
  const PerturbationResult res =
      perturbation_test(pot, bcc_at(rho3(kK0)), {2, 2, 4}, opt);
  CHECK(res.n_reference == 16);
  CHECK(res.violations == 0);
  CHECK(res.worst_delta >= res.tolerance_floor);
  CHECK(static_cast<int>(res.log.size()) == opt.trials);
}

TEST_CASE("parallel trial log is identical to the serial one") {
  const PairPotential& pot = stock_potential();
  PerturbationOptions opt;
  opt.mode = EnsembleMode::canonical;
  opt.trials = 64;
  opt.seed = 5;
  opt.threads = 1;
  const PerturbationResult serial =
      perturbation_test(pot, bcc_at(1.2 * rho3(kK0)), {2, 2, 2}, opt);
  opt.threads = 2;
  const PerturbationResult parallel =
      perturbation_test(pot, bcc_at(1.2 * rho3(kK0)), {2, 2, 2}, opt);
  REQUIRE(serial.log.size() == parallel.log.size());
  for (std::size_t i = 0; i < serial.log.size(); ++i) {
    CHECK(serial.log[i].delta == parallel.log[i].delta);
    CHECK(serial.log[i].kind == parallel.log[i].kind);
  }
}

TEST_CASE("grand-canonical suite at the matched chemical potential") {
  const PairPotential& pot = stock_potential();
  const double rho = 1.25 * rho3(kK0);
  PerturbationOptions opt;
  opt.mode = EnsembleMode::grand;
  opt.mu = mu_of_density(rho, pot.phi_hat_zero(), pot.phi_zero());
  opt.trials = 400;
  opt.seed = 23;
  const PerturbationResult res =
      perturbation_test(pot, bcc_at(rho), {2, 2, 2}, opt);
  CHECK(res.violations == 0);
  CHECK(res.worst_delta >= res.tolerance_floor);
}

TEST_CASE("hypothesis violations are reported") {
  const PairPotential& pot = stock_potential();
  PerturbationOptions opt;
  opt.trials = 10;
  // fcc at the bcc threshold is inadmissible
  const PeriodicConfiguration fcc =
      scale_to_density(named_lattice(LatticeName::fcc, 1.0), rho3(kK0));
  CHECK_THROWS_AS(perturbation_test(pot, fcc, {2, 2, 2}, opt), Error);
  // grand mode with mismatched density
  opt.mode = EnsembleMode::grand;
  opt.mu = 0.0;
  CHECK_THROWS_AS(
      perturbation_test(pot, bcc_at(2.0 * rho3(kK0)), {2, 2, 2}, opt), Error);
}

TEST_CASE("mismatched chemical potential drives insertion/removal as predicted") {
  const PairPotential& pot = stock_potential();
  const double rho = 1.5 * rho3(kK0);
  const PeriodicConfiguration bcc = bcc_at(rho);
  const PeriodCell cell{bcc.basis, {2, 2, 2}};
  const auto reference = configuration_in_cell(bcc, {2, 2, 2});

  // inserting a far-from-matched particle changes U_L by exactly the flat
  // field value rho phi_hat(0)
  const double mu_matched =
      mu_of_density(rho, pot.phi_hat_zero(), pot.phi_zero());
  for (double mu : {mu_matched - 3.0 * pot.phi_zero(),
                    mu_matched + 3.0 * pot.phi_zero()}) {
    const double bracket =
        pot.phi_hat_zero() * rho - mu - 0.5 * pot.phi_zero();
    const double mu_l = mu_lambda(pot, cell, mu);
    auto grand = [&](const std::vector<Vec3>& pts) {
      return box_energy(pot, cell, pts).total - mu_l * pts.size();
    };
    const double ref_value = grand(reference);
    std::vector<Vec3> plus = reference;
    plus.push_back(Vec3{0.123, 0.456, 0.789});
    const double delta_insert = grand(plus) - ref_value;
    // exact identity: Delta = rho phi_hat(0) - mu_Lambda
    CHECK(delta_insert ==
          doctest::Approx(rho * pot.phi_hat_zero() - mu_l)
              .epsilon(1e-11)
              .scale(std::abs(ref_value)));
    std::vector<Vec3> minus = reference;
    minus.pop_back();
    const double delta_remove = grand(minus) - ref_value;
    // |bracket| is large, so the first-order term fixes the signs
    if (bracket > 0.0) {
      CHECK(delta_insert > 0.0);
      CHECK(delta_remove < 0.0);
    } else {
      CHECK(delta_insert < 0.0);
      CHECK(delta_remove > 0.0);
    }
  }
}

TEST_CASE("deformation walk: plateau on the admissible set") {
  const PairPotential& pot = stock_potential();
  const DeformationScan scan =
      deformation_scan(pot, bcc_at(1.1 * rho3(kK0)), 300, 0.004, 31);
  CHECK(scan.admissible_count > 0);
  CHECK(scan.admissible_count < 300);  // the walk wanders out eventually
  CHECK(scan.max_admissible_deviation <= 1e-12 * std::abs(scan.plateau));
  CHECK(scan.min_inadmissible_excess > 0.0);
  // identity deformation is admissible and sits on the plateau
  CHECK(scan.samples.size() > 0);
}

TEST_CASE("deformation walk requires an admissible start") {
  const PairPotential& pot = stock_potential();
  CHECK_THROWS_AS(
      deformation_scan(pot, bcc_at(0.9 * rho3(kK0)), 10, 0.02, 1), Error);
}

TEST_CASE("deformations stay unimodular and compression preserves admissibility") {
  const PairPotential& pot = stock_potential();
  const DeformationScan scan =
      deformation_scan(pot, bcc_at(1.2 * rho3(kK0)), 60, 0.01, 77);
  int admissible_checked = 0;
  for (const DeformationSample& s : scan.samples) {
    CHECK(std::abs(det(s.deformation, 3) - 1.0) <= 1e-12);
    if (!s.admissible) continue;
    // compressing an admissible sample only grows q
    PeriodicConfiguration compressed = bcc_at(1.2 * rho3(kK0));
    compressed.basis.generators =
        matmul(compressed.basis.generators, s.deformation);
    for (int i = 0; i < 3; ++i) compressed.basis.generators[i] *= 0.9;
    CHECK(reciprocal(compressed.basis).shortest_norm >= s.q / 0.9 * (1 - 1e-12));
    CHECK(reciprocal(compressed.basis).shortest_norm >= kK0);
    ++admissible_checked;
  }
  CHECK(admissible_checked > 0);
}

TEST_CASE("threshold sharpness: slightly undershooting the density costs energy") {
  const PairPotential& pot = stock_potential();
  const PeriodicConfiguration under = bcc_at((1.0 - 1e-3) * rho3(kK0));
  const EnergyReport rep = energy_density(pot, under);
  CHECK(!rep.shells.empty());  // a shell entered the open ball
  const double plateau = plateau_energy_density(pot, under.density());
  CHECK(rep.energy_density > plateau);
  CHECK(rep.energy_density - plateau > 1e-10 * std::abs(plateau));
}

TEST_CASE("threshold uniqueness against named and random competitors") {
  const PairPotential& pot = stock_potential();
  auto set = default_competitors(3, 8, 4, 2026);
  // the reference itself must come back with zero gap
  set.push_back({"bcc-self", named_lattice(LatticeName::bcc, 1.0)});
  const UniquenessReport rep = uniqueness_at_threshold(pot, 3, set);
  CHECK(rep.threshold_density == doctest::Approx(rho3(kK0)).epsilon(1e-13));
  for (const UniquenessEntry& e : rep.entries) {
    if (e.label == "bcc-self")
      CHECK(std::abs(e.gap) <= 1e-10 * std::abs(rep.reference_energy));
    else
      CHECK(e.gap > 1e-6 * std::abs(rep.reference_energy));
  }
}

TEST_CASE("two-dimensional uniqueness") {
  const PairPotential tri2(SpectralProfile::make_polynomial(
      2, kK0, Poly{kK0, -1.0}));  // triangle reused radially in 2D
  const UniquenessReport rep =
      uniqueness_at_threshold(tri2, 2, default_competitors(2, 6, 3, 7));
  for (const UniquenessEntry& e : rep.entries)
    CHECK(e.gap > 1e-6 * std::abs(rep.reference_energy));
}

TEST_CASE("window gap converges to the energy-density difference") {
  const PairPotential& pot = soft_potential();
  // well below both thresholds: deep sc shells cost much more than the
  // bcc ones, so the density gap is big against the truncation tail
  const double rho = 0.3;
  const PeriodicConfiguration sc =
      scale_to_density(named_lattice(LatticeName::sc, 1.0), rho);
  const PeriodicConfiguration bcc = bcc_at(rho);

  const GlobalMinReport rep = global_minimality_check(
      pot, sc, bcc, {7.5, 9.0, 10.5, 12.0, 13.5, 15.0}, 40.0 / kK0);
  // Y = bcc has the lower energy density
  CHECK(rep.predicted_gap_per_volume < 0.0);
  CHECK(std::abs(rep.fitted_gap_per_volume - rep.predicted_gap_per_volume) <=
        0.1 * std::abs(rep.predicted_gap_per_volume));

  // Y = X: zero gap at every window
  const GlobalMinReport same =
      global_minimality_check(pot, bcc, bcc, {6.0}, 40.0 / kK0);
  CHECK(same.predicted_gap_per_volume == 0.0);
  CHECK(std::abs(same.fitted_gap_per_volume) <= same.windows[0].tail_bound);
}

TEST_CASE("union of admissible configurations is force-free") {
  const PairPotential& pot = soft_potential();
  const double rho = 1.1 * rho3(kK0);
  const PeriodicConfiguration bcc = bcc_at(rho);

  // single part: plain field constancy
  UnionReport one = union_window_check(pot, {bcc}, 8.0, 0.0, 24, 0, 3);
  CHECK(one.max_field_deviation <=
        one.field_tail_bound + 1e-9 * one.expected_field);

  // two shifted copies of the same lattice
  PeriodicConfiguration shifted = bcc;
  shifted.offsets[0] = Vec3{0.5, 0.5, 0.5};
  UnionReport two = union_window_check(pot, {bcc, shifted}, 8.0, 0.0, 24, 0, 5);
  CHECK(two.expected_field ==
        doctest::Approx(2.0 * rho * pot.phi_hat_zero()).epsilon(1e-13));
  CHECK(two.max_field_deviation <=
        two.field_tail_bound + 1e-9 * two.expected_field);

  // bcc union fcc, both individually admissible
  const PeriodicConfiguration fcc = scale_to_density(
      named_lattice(LatticeName::fcc, 1.0),
      1.1 * threshold_density(LatticeName::fcc, kK0).closed_form);
  UnionReport mixed =
      union_window_check(pot, {bcc, fcc}, 8.0, 0.0, 24, 0, 7);
  CHECK(mixed.expected_field ==
        doctest::Approx((bcc.density() + fcc.density()) * pot.phi_hat_zero())
            .epsilon(1e-13));
  CHECK(mixed.max_field_deviation <=
        mixed.field_tail_bound + 1e-9 * mixed.expected_field);

  // windowed grand-canonical trials cannot win more than the tail allows
  const double mu = mu_of_density(2.0 * rho, pot.phi_hat_zero(),
                                  pot.phi_zero());
  UnionReport trials =
      union_window_check(pot, {bcc, shifted}, 8.0, mu, 8, 60, 11);
  CHECK(trials.worst_delta >= -trials.delta_tail_bound);
}
