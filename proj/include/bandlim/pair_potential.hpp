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

#ifndef BANDLIM_PAIR_POTENTIAL_HPP
#define BANDLIM_PAIR_POTENTIAL_HPP

#include <memory>
#include <vector>

#include "bandlim/spectral_profile.hpp"

namespace bandlim {

// Real-space pair potential derived from a spectral profile by the radial
// inverse transform:
//   d=1: (1/pi)      int phi_hat(k) cos(kr) dk
//   d=2: (1/2pi)     int phi_hat(k) J0(kr) k dk
//   d=3: (1/2pi^2 r) int phi_hat(k) sin(kr) k dk
// For polynomial profiles in 3D with K0 r beyond 30 the evaluation switches
// to the partial-integration form, which exposes the cos(K0 r)/r^4 tail.
class PairPotential {
 public:
  explicit PairPotential(SpectralProfile profile);

  const SpectralProfile& profile() const { return profile_; }
  int dimension() const { return profile_.dimension(); }
  double cutoff() const { return profile_.cutoff(); }

  double phi_zero() const { return phi_zero_; }
  double phi_hat_zero() const { return profile_.phi_hat_zero(); }

  // phi(|r|).
  double operator()(double r) const;

  // Direct adaptive quadrature regardless of the large-argument switch;
  // kept public so the two evaluation routes can be compared.
  double eval_direct(double r) const;

  // Partial-integration form (3D polynomial profiles only).
  double eval_partial_integration(double r) const;

  struct Asymptotics {
    double cos_amplitude;   // A in  A cos(K0 r)/r^4
    double constant_term;   // non-oscillatory 1/r^4 coefficient
  };
  // 3D polynomial profiles only; throws Error(unsupported) otherwise.
  Asymptotics asymptotics() const;

  // C/r^p envelope bound on |phi| for tail estimates. Fitted once on a
  // sample window; p = 4 for the 3D polynomial family, a steeper power for
  // smooth (mollified) profiles.
  struct Envelope {
    double amplitude;
    double power;
  };
  const Envelope& envelope() const;

 private:
  SpectralProfile profile_;
  double phi_zero_ = 0.0;
  Poly h_;     // k * f(k) for the polynomial path
  Poly h2_;    // h''
  Poly h3_;    // h'''
  // flattened per-segment quadrature of tabulated profiles (nodes, and
  // weight * phi_hat * k^{d-1} products)
  std::vector<double> tab_nodes_;
  std::vector<double> tab_weighted_;
  mutable std::unique_ptr<Envelope> envelope_;
};

// Dense radial table of phi with cubic interpolation, for the real-space
// summation paths that need millions of evaluations.
class RadialInterpolant {
 public:
  RadialInterpolant(const PairPotential& pot, double r_max, int points = 16384);
  double operator()(double r) const;
  double r_max() const { return r_max_; }

 private:
  double r_max_;
  double h_;
  std::vector<double> values_;
};

}  // namespace bandlim

#endif  // BANDLIM_PAIR_POTENTIAL_HPP
