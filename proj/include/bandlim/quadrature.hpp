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

#ifndef BANDLIM_QUADRATURE_HPP
#define BANDLIM_QUADRATURE_HPP

#include <cstddef>
#include <vector>

#include "bandlim/summation.hpp"

namespace bandlim {

// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once (Newton on the Legendre recurrence) and cached.
const GaussRule& gauss_legendre(int n);

// Composite rule: `panels` equal panels over [a, b].
template <class F>
double integrate(F&& f, double a, double b, int panels, int order = 16) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  Kahan acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc.add(rule.weights[i] * half * f(mid + half * rule.nodes[i]));
  }
  return acc.value();
}

// Flattened composite nodes/weights over [a, b], for batched integrands.
struct PanelGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PanelGrid panel_grid(double a, double b, int panels, int order = 16);

}  // namespace bandlim

#endif  // BANDLIM_QUADRATURE_HPP
