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

#include "bandlim/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/error.hpp"

namespace bandlim {

double ground_state_e_rho(double rho, double phi_hat0, double phi0) {
  return 0.5 * rho * (rho * phi_hat0 - phi0);
}

double ground_state_e_mu(double mu, double phi_hat0, double phi0) {
  if (!(phi_hat0 > 0.0))
    throw Error(Errc::unsupported, "e_mu needs phi_hat(0) > 0");
  const double shifted = mu + 0.5 * phi0;
  return -0.5 * shifted * shifted / phi_hat0;
}

double mu_of_density(double rho, double phi_hat0, double phi0) {
  return phi_hat0 * rho - 0.5 * phi0;
}

double density_of_mu(double mu, double phi_hat0, double phi0) {
  if (!(phi_hat0 > 0.0))
    throw Error(Errc::unsupported, "density_of_mu needs phi_hat(0) > 0");
  return (mu + 0.5 * phi0) / phi_hat0;
}

Thermodynamics thermodynamics_at_density(const PairPotential& pot,
                                         double rho) {
  Thermodynamics t;
  t.phi_hat_zero = pot.phi_hat_zero();
  t.phi_zero = pot.phi_zero();
  t.rho = rho;
  t.mu = mu_of_density(rho, t.phi_hat_zero, t.phi_zero);
  t.e_rho = ground_state_e_rho(rho, t.phi_hat_zero, t.phi_zero);
  t.e_mu = ground_state_e_mu(t.mu, t.phi_hat_zero, t.phi_zero);
  return t;
}

Thermodynamics thermodynamics_at_mu(const PairPotential& pot, double mu) {
  return thermodynamics_at_density(
      pot, density_of_mu(mu, pot.phi_hat_zero(), pot.phi_zero()));
}

LegendreReport legendre_check(const PairPotential& pot, double rho,
                              int grid_points) {
  const double phi_hat0 = pot.phi_hat_zero();
  const double phi0 = pot.phi_zero();
  if (!(phi_hat0 > 0.0))
    throw Error(Errc::unsupported, "Legendre check needs phi_hat(0) > 0");
  if (!(rho > 0.0))
    throw Error(Errc::invalid_parameter, "density must be > 0");
  if (grid_points < 3)
    throw Error(Errc::invalid_parameter, "grid too coarse");

  LegendreReport rep;
  rep.rho = rho;
  rep.mu_star_analytic = mu_of_density(rho, phi_hat0, phi0);
  rep.e_rho_closed = ground_state_e_rho(rho, phi_hat0, phi0);

  // e_rho = max_mu { e_mu + mu rho } over a grid bracketing the optimum
  const double mu_span = std::max(std::abs(rep.mu_star_analytic), phi_hat0 * rho);
  const double mu_lo = rep.mu_star_analytic - mu_span;
  const double mu_hi = rep.mu_star_analytic + mu_span;
  rep.grid_step_mu = (mu_hi - mu_lo) / (grid_points - 1);
  double best = -1e300, best_mu = mu_lo;
  for (int i = 0; i < grid_points; ++i) {
    const double mu = mu_lo + i * rep.grid_step_mu;
    const double v = ground_state_e_mu(mu, phi_hat0, phi0) + mu * rho;
    if (v > best) {
      best = v;
      best_mu = mu;
    }
  }
  rep.e_rho_from_transform = best;
  rep.mu_star_grid = best_mu;

  // e_mu = min_rho { e_rho - mu rho } at the conjugate mu
  rep.mu = rep.mu_star_analytic;
  rep.rho_star_analytic = density_of_mu(rep.mu, phi_hat0, phi0);
  rep.e_mu_closed = ground_state_e_mu(rep.mu, phi_hat0, phi0);
  const double rho_hi = 2.0 * std::max(rep.rho_star_analytic, rho);
  rep.grid_step_rho = rho_hi / (grid_points - 1);
  double bmin = 1e300, best_rho = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double r = i * rep.grid_step_rho;
    const double v = ground_state_e_rho(r, phi_hat0, phi0) - rep.mu * r;
    if (v < bmin) {
      bmin = v;
      best_rho = r;
    }
  }
  rep.e_mu_from_transform = bmin;
  rep.rho_star_grid = best_rho;

  const double s1 = std::max(std::abs(rep.e_rho_closed), 1e-300);
  const double s2 = std::max(std::abs(rep.e_mu_closed), 1e-300);
  rep.max_rel_error =
      std::max(std::abs(rep.e_rho_from_transform - rep.e_rho_closed) / s1,
               std::abs(rep.e_mu_from_transform - rep.e_mu_closed) / s2);
  return rep;
}

}  // namespace bandlim
