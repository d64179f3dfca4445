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

#ifndef BANDLIM_VERIFIER_HPP
#define BANDLIM_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bandlim/energy.hpp"

namespace bandlim {

// ---------------------------------------------------------------------------
// Perturbation trials: random finite modifications of the reference
// configuration inside a period cell must never lower the (grand) canonical
// cell energy beyond the summation noise floor.

enum class TrialKind : int {
  displace_one = 0,
  displace_cluster = 1,
  teleport = 2,
  insert = 3,
  remove = 4,
};

const char* trial_kind_name(TrialKind k);

enum class EnsembleMode { canonical, grand };

struct TrialRecord {
  std::uint64_t index = 0;
  TrialKind kind = TrialKind::displace_one;
  int delta_n = 0;
  double delta = 0.0;  // energy difference against the reference
};

struct PerturbationOptions {
  EnsembleMode mode = EnsembleMode::canonical;
  double mu = 0.0;  // grand mode only
  int trials = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  bool keep_log = true;
  // require q >= K0 and (grand) the density-mu match; disable to probe
  // mismatched chemical potentials on purpose
  bool enforce_hypotheses = true;
};

struct PerturbationResult {
  double worst_delta = 0.0;
  TrialRecord worst_trial;
  double tolerance_floor = 0.0;  // -1e-9 * N * phi(0)
  std::size_t violations = 0;    // trials with delta below the floor
  int n_reference = 0;
  double reference_energy = 0.0;  // U_L(X) (canonical) or U_L - mu_L N (grand)
  double mu_lambda_value = 0.0;
  std::vector<TrialRecord> log;  // trial order, independent of threading
};

PerturbationResult perturbation_test(const PairPotential& pot,
                                     const PeriodicConfiguration& config,
                                     const std::array<int, 3>& multipliers,
                                     const PerturbationOptions& options);

// ---------------------------------------------------------------------------
// Volume-preserving deformation walk: admissible samples (q >= K0) share
// the plateau energy density; inadmissible ones exceed it.

struct DeformationSample {
  Mat3 deformation;  // unimodular
  double q = 0.0;
  bool admissible = false;
  double energy_density = 0.0;
  double plateau_deviation = 0.0;  // e - plateau (signed)
};

struct DeformationScan {
  double plateau = 0.0;
  int admissible_count = 0;
  double max_admissible_deviation = 0.0;   // |e - plateau| over admissible
  double min_inadmissible_excess = 0.0;    // min (e - plateau) over the rest
  std::vector<DeformationSample> samples;
};

DeformationScan deformation_scan(const PairPotential& pot,
                                 const PeriodicConfiguration& config,
                                 int samples, double step, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Threshold uniqueness: every competitor scaled to the threshold density
// rho_d costs strictly more energy than the minimal Bravais lattice.

struct Competitor {
  std::string label;
  PeriodicConfiguration config;
};

struct UniquenessEntry {
  std::string label;
  double energy = 0.0;
  double gap = 0.0;   // energy - reference
  double q = 0.0;     // shortest reciprocal vector after scaling
};

struct UniquenessReport {
  double threshold_density = 0.0;
  double reference_energy = 0.0;
  double min_gap = 0.0;
  std::vector<UniquenessEntry> entries;
};

UniquenessReport uniqueness_at_threshold(const PairPotential& pot, int dim,
                                         const std::vector<Competitor>& set);

// Standard competitor set: the named lattices of the dimension plus random
// Bravais lattices and (3D) random two-point configurations. Random
// entries that reduce to the minimal lattice itself are rejected.
std::vector<Competitor> default_competitors(int dim, int random_bravais,
                                            int random_two_point,
                                            std::uint64_t seed);

// ---------------------------------------------------------------------------
// Global minimality: window energies U(.|X outside the window) grow like
// V * e for large windows, so the X/Y gap per volume converges to
// e(Y) - e(X).

struct WindowGap {
  double window_side = 0.0;
  int n_points = 0;
  double u_reference = 0.0;  // U(X cap L | X minus L)
  double u_competitor = 0.0;
  double gap_per_volume = 0.0;
  double tail_bound = 0.0;
};

struct GlobalMinReport {
  double predicted_gap_per_volume = 0.0;  // e(Y) - e(X), reciprocal route
  std::vector<WindowGap> windows;
  double fitted_gap_per_volume = 0.0;  // largest window
};

GlobalMinReport global_minimality_check(const PairPotential& pot,
                                        const PeriodicConfiguration& x,
                                        const PeriodicConfiguration& y,
                                        const std::vector<double>& window_sides,
                                        double cutoff);

// ---------------------------------------------------------------------------
// Unions of admissible configurations: the combined external field is the
// sum of the component constants, and windowed perturbations cannot win
// more than the truncation tail.

struct UnionReport {
  double expected_field = 0.0;  // sum_i rho_i phi_hat(0)
  double max_field_deviation = 0.0;
  double field_tail_bound = 0.0;
  double worst_delta = 0.0;  // windowed grand-canonical trial floor
  double delta_tail_bound = 0.0;
  int field_points = 0;
  int trials = 0;
};

UnionReport union_window_check(const PairPotential& pot,
                               const std::vector<PeriodicConfiguration>& parts,
                               double window_side, double mu, int field_points,
                               int trials, std::uint64_t seed);

}  // namespace bandlim

#endif  // BANDLIM_VERIFIER_HPP
