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

#ifndef BANDLIM_POLY_HPP
#define BANDLIM_POLY_HPP

#include <cstddef>
#include <vector>

namespace bandlim {

// Dense polynomial coefficients, lowest degree first.
using Poly = std::vector<double>;

inline double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline Poly poly_derivative(const Poly& p) {
  Poly d;
  if (p.size() <= 1) return d;
  d.resize(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i)
    d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Multiplies by x (used to pass from f(k) to k f(k)).
inline Poly poly_shift_up(const Poly& p) {
  Poly q(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i];
  return q;
}

// Exact integral of x^m * p(x) over [0, upper].
inline double poly_moment(const Poly& p, int m, double upper) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) {
    const int e = static_cast<int>(i) + m + 1;
    acc = acc * upper + p[i] / e;
  }
  // Horner accumulates sum_i p_i upper^i / (i+m+1); the upper^{m+1} factor
  // is applied afterwards.
  double scale = 1.0;
  for (int j = 0; j < m + 1; ++j) scale *= upper;
  return acc * scale;
}

}  // namespace bandlim

#endif  // BANDLIM_POLY_HPP
