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

#ifndef BANDLIM_SPECTRAL_PROFILE_HPP
#define BANDLIM_SPECTRAL_PROFILE_HPP

#include <functional>
#include <string>
#include <vector>

#include "bandlim/poly.hpp"

namespace bandlim {

enum class ProfileKind { polynomial, piecewise, tabulated, mollified };

const char* profile_kind_name(ProfileKind k);
ProfileKind profile_kind_from_name(const std::string& name);

// Radial spectral profile: a nonnegative, even interaction transform
// supported inside [0, K0). The evaluator returns exactly zero at and
// beyond the cutoff, whatever the representation stores.
class SpectralProfile {
 public:
  int dimension() const { return dim_; }
  double cutoff() const { return k0_; }
  ProfileKind kind() const { return kind_; }

  // phi_hat(|k|); exact 0 for |k| >= K0.
  double operator()(double k) const;
  double phi_hat_zero() const { return phi_hat_zero_; }

  // Exact integral of phi_hat(k) k^m over [0, K0] (no quadrature error
  // beyond rounding; each representation integrates in closed form).
  double radial_moment(int m) const;

  // phi(0) = (2 pi)^-d integral of phi_hat over R^d.
  double phi_zero() const;

  const Poly* polynomial() const {
    return kind_ == ProfileKind::polynomial ? &poly_ : nullptr;
  }
  const std::vector<double>& samples() const { return samples_; }
  double mollifier_width() const { return eps_; }

  // --- constructors ---

  // phi_hat(k) = coeffs(k) on [0, K0); must be nonnegative there.
  static SpectralProfile make_polynomial(int dim, double k0, Poly coeffs);

  // Piecewise polynomial: piece j covers [breaks[j], breaks[j+1]] with
  // local coordinate (k - breaks[j]); breaks run from 0 to K0.
  static SpectralProfile make_piecewise(int dim, double k0,
                                        std::vector<double> breaks,
                                        std::vector<Poly> pieces);

  // Uniform samples on [0, K0], linear interpolation in between.
  static SpectralProfile make_tabulated(int dim, double k0,
                                        std::vector<double> samples);

  // Rehydrates a stored mollified profile from its samples.
  static SpectralProfile make_mollified_samples(int dim, double k0,
                                                double eps,
                                                std::vector<double> samples);

  // 1D triangle K0 - |k|.
  static SpectralProfile triangle(double k0);

  friend SpectralProfile build_mollified(
      const std::function<double(double)>& g, double eps, double k0, int dim,
      int grid_points);
  friend SpectralProfile build_longrange_3d(Poly f_coeffs, double k0);
  friend SpectralProfile mollified_flat_profile(double k0, int dim,
                                                double support_factor,
                                                double eps_factor,
                                                int grid_points);

 private:
  SpectralProfile() = default;
  void validate_nonnegative() const;

  int dim_ = 3;
  double k0_ = 0.0;
  ProfileKind kind_ = ProfileKind::polynomial;
  double phi_hat_zero_ = 0.0;
  Poly poly_;                         // polynomial kind
  std::vector<double> breaks_;        // piecewise kind
  std::vector<Poly> pieces_;          // piecewise kind
  std::vector<double> samples_;       // tabulated / mollified kinds
  double eps_ = 0.0;                  // mollified kind
};

// Convolution of g (supported on [0, K0 - eps]) with the compactly
// supported bump exp[-(1 - k^2/eps^2)^-1]; the result is stored as a
// tabulated profile and is identically zero at and beyond K0.
SpectralProfile build_mollified(const std::function<double(double)>& g,
                                double eps, double k0, int dim,
                                int grid_points = 4096);

// 3D family with algebraic decay: phi_hat = f(k) on [0, K0] where f >= 0,
// f(K0) = f'(K0) = 0 (validated; tolerance 1e-10 of the profile scale).
SpectralProfile build_longrange_3d(Poly f_coeffs, double k0);

// The quartic f(k) = pi^2 (k + z)(k + conj z)(k - K0)^2, z = (K0/10)(1+3i):
// strictly positive inside the band, with a cos(K0 r)/r^4 tail in real
// space. Ships as the standard long-range fixture.
SpectralProfile longrange_example_3d(double k0);

// Flat base mollified with eps = eps_factor * (support_factor * K0) and
// declared at cutoff K0. With support_factor < 1 the support ends strictly
// inside the band; real-space sums truncated at a finite radius then agree
// with the reciprocal route to near machine precision, since no shell can
// sit within 1/R of the support edge.
SpectralProfile mollified_flat_profile(double k0, int dim,
                                       double support_factor = 1.0,
                                       double eps_factor = 0.5,
                                       int grid_points = 4096);

// Smooth-on-smooth fixture: the base g is itself a bump, so the transform
// decay of the two factors compounds and the real-space tail collapses much
// faster than for a flat base. With support_factor < 1 the whole spectral
// weight sits in [0, support_factor * K0]; the margin to the band edge is
// what lets truncated real-space sums match the reciprocal route to 1e-6
// and beyond at moderate cutoffs. This is the profile the
// real-space/reciprocal equivalence checks ship with.
SpectralProfile mollified_bump_profile(double k0, int dim,
                                       int grid_points = 8192,
                                       double support_factor = 1.0);

}  // namespace bandlim

#endif  // BANDLIM_SPECTRAL_PROFILE_HPP
