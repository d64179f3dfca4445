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
#include "bandlim/quadrature.hpp"
#include "bandlim/spectral_profile.hpp"

using namespace bandlim;

namespace {
constexpr double kTwoPi = 6.283185307179586476925;

double bump_ref(double u, double eps) {
  const double s = u / eps;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}
}  // namespace

TEST_CASE("triangle profile evaluates to K0 - |k| inside the band") {
  const double k0 = kTwoPi;
  const SpectralProfile p = SpectralProfile::triangle(k0);
  CHECK(p.dimension() == 1);
  CHECK(p(0.0) == doctest::Approx(k0).epsilon(1e-15));
  CHECK(p(1.0) == doctest::Approx(k0 - 1.0).epsilon(1e-15));
  CHECK(p(k0) == 0.0);
  CHECK(p(2.0 * k0) == 0.0);
  CHECK(p(-1.0) == p(1.0));  // radial evaluator is even
}

TEST_CASE("support is exactly zero at and beyond the cutoff for all kinds") {
  const double k0 = 3.7;
  std::vector<SpectralProfile> profiles;
  profiles.push_back(SpectralProfile::triangle(k0));
  profiles.push_back(longrange_example_3d(k0));
  profiles.push_back(
      SpectralProfile::make_tabulated(2, k0, std::vector<double>(64, 1.0)));
  profiles.push_back(build_mollified([](double) { return 1.0; }, 1.0, k0, 1,
                                     512));
  for (const auto& p : profiles) {
    CHECK(p(k0) == 0.0);
    CHECK(p(k0 * 1.0000001) == 0.0);
    CHECK(p(10.0 * k0) == 0.0);
    for (int i = 0; i < 64; ++i) CHECK(p(k0 * i / 64.0) >= 0.0);
  }
}

TEST_CASE("radial moments and phi(0) closed forms") {
  const double k0 = kTwoPi;
  const SpectralProfile tri = SpectralProfile::triangle(k0);
  // int (K0 - k) dk = K0^2/2, so phi(0) = K0^2 / (2 pi) in 1D
  CHECK(tri.radial_moment(0) == doctest::Approx(0.5 * k0 * k0).epsilon(1e-14));
  CHECK(tri.phi_zero() ==
        doctest::Approx(k0 * k0 / kTwoPi).epsilon(1e-14));

  // constant tabulated profile in 3D: phi(0) = K0^3 / (6 pi^2)
  const SpectralProfile flat =
      SpectralProfile::make_tabulated(3, k0, std::vector<double>(4096, 1.0));
  CHECK(flat.phi_zero() ==
        doctest::Approx(k0 * k0 * k0 / (6.0 * M_PI * M_PI)).epsilon(1e-9));

  // zero profile
  const SpectralProfile zero = SpectralProfile::make_polynomial(3, k0, {0.0});
  CHECK(zero.phi_zero() == 0.0);
  CHECK(zero.phi_hat_zero() == 0.0);
}

TEST_CASE("piecewise representation integrates like its polynomial twin") {
  const double k0 = 2.0;
  // triangle split at k0/2 into two linear pieces
  const SpectralProfile split = SpectralProfile::make_piecewise(
      1, k0, {0.0, 1.0, 2.0}, {Poly{2.0, -1.0}, Poly{1.0, -1.0}});
  const SpectralProfile whole = SpectralProfile::triangle(k0);
  for (int i = 0; i <= 50; ++i) {
    const double k = k0 * i / 50.0;
    CHECK(split(k) == doctest::Approx(whole(k)).epsilon(1e-14));
  }
  CHECK(split.radial_moment(2) ==
        doctest::Approx(whole.radial_moment(2)).epsilon(1e-13));
}

TEST_CASE("long-range constructor enforces the contact conditions") {
  const double k0 = kTwoPi;
  // (k - K0)^2: nonnegative with a double root at the cutoff -> accepted
  CHECK_NOTHROW(build_longrange_3d(Poly{k0 * k0, -2.0 * k0, 1.0}, k0));
  // K0 - k: f(K0) = 0 but f'(K0) = -1 -> rejected
  CHECK_THROWS_AS(build_longrange_3d(Poly{k0, -1.0}, k0), Error);
  // negative somewhere -> rejected
  CHECK_THROWS_AS(
      SpectralProfile::make_polynomial(3, k0, Poly{-1.0, 0.0}), Error);
}

TEST_CASE("stock long-range example satisfies the advertised identities") {
  const double k0 = kTwoPi;
  const SpectralProfile f = longrange_example_3d(k0);
  const double pi2 = M_PI * M_PI;
  // f(0) = pi^2 K0^4 / 10
  CHECK(f.phi_hat_zero() ==
        doctest::Approx(0.1 * pi2 * std::pow(k0, 4)).epsilon(1e-13));
  CHECK(f(k0) == 0.0);
  CHECK(f(0.999999 * k0) > 0.0);
  // strictly positive inside the band
  for (int i = 0; i < 1000; ++i) CHECK(f(k0 * i / 1000.0) > 0.0);
  // phi(0) = 17 K0^7 / 2100 (moment of the quartic against k^2)
  CHECK(f.phi_zero() ==
        doctest::Approx(17.0 * std::pow(k0, 7) / 2100.0).epsilon(1e-13));
}

TEST_CASE("mollified profile: zero base gives the zero profile") {
  const SpectralProfile p =
      build_mollified([](double) { return 0.0; }, 0.5, 2.0, 1, 256);
  CHECK(p.phi_hat_zero() == 0.0);
  for (int i = 0; i <= 32; ++i) CHECK(p(2.0 * i / 32.0) == 0.0);
}

TEST_CASE("mollified profile: flat base, 1D, overlap structure") {
  const double k0 = 1.0, eps = 0.5;
  const SpectralProfile p =
      build_mollified([](double) { return 1.0; }, eps, k0, 1, 2048);
  // support reaches into (0.99, 1.0) but vanishes at the cutoff
  CHECK(p(0.99) > 0.0);
  CHECK(p(1.0) == 0.0);
  // phi_hat(0) = integral of the bump over |k'| < K0 - eps = its support
  const double expected =
      2.0 * integrate([&](double u) { return bump_ref(u, eps); }, 0.0, eps, 64);
  CHECK(p.phi_hat_zero() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("mollified profile: 3D flat base matches a brute-force convolution") {
  const double k0 = kTwoPi, eps = 0.5 * k0;
  const SpectralProfile p =
      build_mollified([](double) { return 1.0; }, eps, k0, 3, 1024);
  // phi_hat(0) = int_{|k'|<eps} eta = 4 pi int s^2 eta(s) ds
  const double expected =
      2.0 * kTwoPi *
      integrate([&](double s) { return s * s * bump_ref(s, eps); }, 0.0, eps,
                64);
  CHECK(p.phi_hat_zero() == doctest::Approx(expected).epsilon(1e-9));

  // spot value at an exact grid node against a spherical-shell quadrature
  const double k = 512.0 * k0 / 1023.0;
  const double direct = integrate(
      [&](double s) {
        return integrate(
            [&](double th) {
              const double d = std::sqrt(std::max(
                  0.0, k * k + s * s - 2.0 * k * s * std::cos(th)));
              return kTwoPi * s * s * std::sin(th) * bump_ref(d, eps);
            },
            0.0, M_PI, 32);
      },
      0.0, k0 - eps, 48);
  CHECK(p(k) == doctest::Approx(direct).epsilon(1e-7));

  CHECK_THROWS_AS(build_mollified([](double) { return 1.0; }, k0, k0, 3, 256),
                  Error);
  CHECK_THROWS_AS(build_mollified([](double) { return -1.0; }, 1.0, k0, 3, 256),
                  Error);
}
