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

#ifndef BANDLIM_OPTIMIZER_HPP
#define BANDLIM_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "bandlim/energy.hpp"

namespace bandlim {

// |S(k)|^2 on the dual ball for a finite configuration in a cell.
struct SfEntry {
  std::array<int, 3> row{0, 0, 0};
  double k_norm = 0.0;
  double s2 = 0.0;
};

std::vector<SfEntry> structure_factor_map(const PeriodCell& cell,
                                          const std::vector<Vec3>& fracs,
                                          double k0);

// Energy of the cell plus the exact gradient of the finite reciprocal sum
// with respect to the particle positions (cartesian components).
struct GradientResult {
  BoxEnergy energy;
  std::vector<Vec3> gradient;  // dU/dr_j
};

GradientResult box_energy_gradient(const PairPotential& pot,
                                   const PeriodCell& cell,
                                   const DualBall& ball,
                                   const std::vector<Vec3>& fracs);
GradientResult box_energy_gradient(const PairPotential& pot,
                                   const PeriodCell& cell,
                                   const std::vector<Vec3>& fracs);

enum class MinimizeMethod { descent, anneal_descent };

struct MinimizeOptions {
  MinimizeMethod method = MinimizeMethod::anneal_descent;
  std::uint64_t seed = 1;
  int max_iterations = 100000;
  double gap_tolerance = 1e-9;        // on interaction_sum / |floor|
  double residual_tolerance = 1e-11;  // on max |S|^2 / N^2
  int max_anneal_sweeps = 400;
  double anneal_cooling = 0.95;
  double anneal_min_acceptance = 0.05;
};

struct MinimizationRun {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<Vec3> initial_positions;  // fractional
  std::vector<Vec3> positions;          // fractional, wrapped
  std::vector<double> energy_trajectory;
  double final_energy = 0.0;  // U_Lambda
  double floor = 0.0;
  double gap = 0.0;             // final_energy - floor (= interaction_sum)
  double residual = 0.0;        // max over in-ball k != 0 of |S|^2/N^2
  int iterations = 0;
  int anneal_sweeps = 0;
  bool converged = false;
};

// Minimizes U_Lambda over N particle positions at fixed N. Annealing (when
// enabled) runs Metropolis single-particle moves on a geometric cooling
// schedule and hands over to Armijo-backtracked gradient descent.
MinimizationRun minimize(const PairPotential& pot, const PeriodCell& cell,
                         int n_particles, const MinimizeOptions& options);

}  // namespace bandlim

#endif  // BANDLIM_OPTIMIZER_HPP
