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

#include "bandlim/bessel.hpp"
#include "bandlim/quadrature.hpp"

using namespace bandlim;

TEST_CASE("gauss-legendre nodes reproduce known 4-point values") {
  const GaussRule& rule = gauss_legendre(4);
  CHECK(rule.nodes[3] == doctest::Approx(0.8611363115940526).epsilon(1e-14));
  CHECK(rule.nodes[2] == doctest::Approx(0.3399810435848563).epsilon(1e-14));
  CHECK(rule.weights[3] == doctest::Approx(0.3478548451374538).epsilon(1e-14));
  CHECK(rule.weights[2] == doctest::Approx(0.6521451548625461).epsilon(1e-14));
}

TEST_CASE("composite rule integrates polynomials exactly") {
  const double v =
      integrate([](double x) { return 5.0 * x * x * x * x; }, 0.0, 2.0, 3);
  CHECK(v == doctest::Approx(32.0).epsilon(1e-14));
}

TEST_CASE("composite rule handles oscillatory integrands") {
  // int_0^10 cos(20 x) dx = sin(200)/20
  const double v =
      integrate([](double x) { return std::cos(20.0 * x); }, 0.0, 10.0, 80);
  CHECK(v == doctest::Approx(std::sin(200.0) / 20.0).epsilon(1e-12));
}

TEST_CASE("bessel j0 against the standard library implementation") {
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.1 * i;  // crosses the series/asymptotic switch at 12
    worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
  }
  CHECK(worst < 5e-11);
}

TEST_CASE("bessel j0 basics") {
  CHECK(bessel_j0(0.0) == 1.0);
  // first zero of J0
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
  CHECK(bessel_j0(-3.5) == bessel_j0(3.5));
}
