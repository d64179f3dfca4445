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

#ifndef BANDLIM_THERMO_HPP
#define BANDLIM_THERMO_HPP

#include "bandlim/pair_potential.hpp"

namespace bandlim {

// Ground-state energy densities of the admissible branch. In the canonical
// ensemble e_rho is quadratic in the density; grand-canonically e_mu is the
// matching parabola in mu, and the two are Legendre transforms linked by
// mu + phi(0)/2 - phi_hat(0) rho = 0.
double ground_state_e_rho(double rho, double phi_hat0, double phi0);
double ground_state_e_mu(double mu, double phi_hat0, double phi0);
double mu_of_density(double rho, double phi_hat0, double phi0);
double density_of_mu(double mu, double phi_hat0, double phi0);

struct Thermodynamics {
  double phi_hat_zero = 0.0;
  double phi_zero = 0.0;
  double rho = 0.0;
  double mu = 0.0;
  double e_rho = 0.0;
  double e_mu = 0.0;
};

Thermodynamics thermodynamics_at_density(const PairPotential& pot, double rho);
Thermodynamics thermodynamics_at_mu(const PairPotential& pot, double mu);

struct LegendreReport {
  double rho = 0.0;
  double mu_star_analytic = 0.0;  // phi_hat(0) rho - phi(0)/2
  double mu_star_grid = 0.0;      // argmax over the mu grid
  double e_rho_closed = 0.0;
  double e_rho_from_transform = 0.0;  // max_mu { e_mu + mu rho }
  double mu = 0.0;
  double rho_star_analytic = 0.0;
  double rho_star_grid = 0.0;
  double e_mu_closed = 0.0;
  double e_mu_from_transform = 0.0;  // min_rho { e_rho - mu rho }
  double max_rel_error = 0.0;
  double grid_step_mu = 0.0;
  double grid_step_rho = 0.0;
};

// Verifies the transform pair on dense grids around the stationary points.
// Requires phi_hat(0) > 0 (otherwise e_mu is not defined).
LegendreReport legendre_check(const PairPotential& pot, double rho,
                              int grid_points = 4001);

}  // namespace bandlim

#endif  // BANDLIM_THERMO_HPP
