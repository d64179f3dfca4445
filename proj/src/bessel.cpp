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

#include "bandlim/bessel.hpp"

#include <cmath>

namespace bandlim {

namespace {

double j0_series(double x) {
  // J0(x) = sum_m (-x^2/4)^m / (m!)^2
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 80; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double j0_asymptotic(double x) {
  // Hankel expansion J0 = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
  // chi = x - pi/4, from H0^(1) ~ sqrt(2/(pi x)) e^{i chi} sum_k i^k a_k/x^k
  // with a_k = [(2k-1)!!]^2 / (k! 8^k). The i^k factor gives signs with
  // period four. Terms are summed until they stop decreasing.
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (odd * odd) * inv8x / k;
    if (term >= prev) break;
    prev = term;
    const double signed_term = (k % 4 == 1 || k % 4 == 2) ? -term : term;
    if (k % 2 == 1)
      q += signed_term;
    else
      p += signed_term;
  }
  const double chi = x - 0.25 * M_PI;
  return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 12.0) return j0_series(x);
  return j0_asymptotic(x);
}

}  // namespace bandlim
