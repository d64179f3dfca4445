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

#ifndef BANDLIM_ENERGY_HPP
#define BANDLIM_ENERGY_HPP

#include <array>
#include <optional>
#include <vector>

#include "bandlim/lattice.hpp"
#include "bandlim/pair_potential.hpp"
#include "bandlim/vec.hpp"

namespace bandlim {

// A dual-grid point inside the interaction ball. `row` are the integer
// coordinates on the grid generators, so a phase k.r becomes the exact
// 2 pi row.frac pairing used by the kernels.
struct DualPoint {
  Vec3 k;
  std::array<int, 3> row{0, 0, 0};
  double norm = 0.0;
  double phi_hat = 0.0;
};

// All dual-grid points with |k| < K0. Compact support makes every
// reciprocal sum in the library a finite sum over this set; there is no
// Ewald split anywhere.
class DualBall {
 public:
  DualBall(const Mat3& dual_generators, int dim,
           const SpectralProfile& profile);

  const std::vector<DualPoint>& points() const { return points_; }
  // sum of phi_hat over the ball, k = 0 included
  double phi_hat_sum() const { return phi_hat_sum_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<DualPoint> points_;  // origin first, then by (norm, row)
  double phi_hat_sum_ = 0.0;
};

struct ShellTerm {
  double k_norm = 0.0;
  std::array<int, 3> row{0, 0, 0};
  double phi_hat = 0.0;
  double s2 = 0.0;           // |sum_j e^{ik.y_j}|^2
  double contribution = 0.0;  // (1/2) rho(B)^2 phi_hat s2
};

// e(X) decomposed into the structure-independent pieces and the in-ball
// reciprocal shells.
struct EnergyReport {
  double density = 0.0;         // rho(X)
  double sublattice_density = 0.0;  // rho(B)
  double energy_density = 0.0;  // e(X)
  double k0_term = 0.0;         // (1/2) rho(X)^2 phi_hat(0)
  double phi0_term = 0.0;       // -(1/2) phi(0) rho(X)
  std::vector<ShellTerm> shells;  // nonzero k only

  // the degenerate-minimum value shared by all admissible configurations
  double plateau() const { return k0_term + phi0_term; }
};

EnergyReport energy_density(const PairPotential& pot,
                            const PeriodicConfiguration& config);

// Closed form (1/2) rho [rho phi_hat(0) - phi(0)].
double plateau_energy_density(const PairPotential& pot, double rho);

// Periodized potential at r (cartesian): V^-1 sum over the dual ball of
// phi_hat(k) e^{ik.r}; finite and exact up to rounding.
double periodized_potential(const PairPotential& pot, const PeriodCell& cell,
                            const Vec3& r_cartesian);

struct BoxEnergy {
  double total = 0.0;            // U_Lambda(R)
  double interaction_sum = 0.0;  // (1/2V) sum_{k!=0} phi_hat |S|^2  (>= 0)
  double self_term = 0.0;        // (N/2V)[N phi_hat(0) - sum phi_hat]
  double floor = 0.0;            // self_term: reached iff all in-ball S vanish
  int n_points = 0;
  std::vector<double> s2;        // |S(k)|^2 aligned with the ball points
};

// Finite-cell energy of positions given in fractional coordinates of the
// cell (wrapped into [0,1) internally).
BoxEnergy box_energy(const PairPotential& pot, const PeriodCell& cell,
                     const std::vector<Vec3>& frac_positions);
BoxEnergy box_energy(const PairPotential& pot, const PeriodCell& cell,
                     const DualBall& ball,
                     const std::vector<Vec3>& frac_positions);

// Fractional coordinates (relative to cell_matrix) of the B-periodic
// reference configuration inside the cell.
std::vector<Vec3> configuration_in_cell(const PeriodicConfiguration& config,
                                        const std::array<int, 3>& multipliers);

struct FieldSample {
  double value = 0.0;      // U(r|X)
  double expected = 0.0;   // rho(X) phi_hat(0)
  double deviation = 0.0;  // value - expected
};

// External field of the infinite configuration on a test particle.
FieldSample external_field(const PairPotential& pot,
                           const PeriodicConfiguration& config,
                           const Vec3& r_cartesian);

// mu_Lambda = mu + (1/2)[phi(0) - V^-1 sum_{dual ball} phi_hat].
double mu_lambda(const PairPotential& pot, const PeriodCell& cell, double mu);

struct OracleResult {
  double energy_density = 0.0;   // truncated sum + continuum tail
  double truncated_sum = 0.0;    // the bare image sum
  double continuum_tail = 0.0;   // (rho_X^2/2) (phi_hat(0) - int_{|u|<=R} phi)
  double tail_bound = 0.0;       // envelope bound on the leftover fluctuation
  double cutoff = 0.0;
  long pair_terms = 0;
};

// Direct real-space route to e(X): truncated image sums of phi, completed
// by the continuum tail of the radial integral, plus an envelope bound on
// the remaining lattice-sum fluctuation. Independent of the reciprocal
// shell sums above (it only ever evaluates phi).
//
// Smooth profiles are truncated through a C^5 window whose transition
// starts at window_inner_fraction * cutoff. A wide transition (fraction 0)
// suppresses the window's spectral leakage hardest and pays off when the
// profile's support keeps a margin to the band edge; 0.5 is a good default
// for full-support profiles.
OracleResult realspace_energy_density(const PairPotential& pot,
                                      const PeriodicConfiguration& config,
                                      double cutoff,
                                      const RadialInterpolant* table = nullptr,
                                      double rel_tolerance = 0.0,
                                      double window_inner_fraction = 0.5);

}  // namespace bandlim

#endif  // BANDLIM_ENERGY_HPP
