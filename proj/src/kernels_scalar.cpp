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

#include "kernels_backend.hpp"
#include "kernels_core.hpp"

namespace bandlim::kernels {

void sincos_turns_scalar(const double* t, double* c, double* s,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto sc = detail::sincos_turn(t[i]);
    c[i] = sc.c;
    s[i] = sc.s;
  }
}

void linear_phases_scalar(double m0, double m1, double m2, const double* f0,
                          const double* f1, const double* f2, double* t,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    t[i] = detail::linear_phase(m0, m1, m2, f0[i], f1[i], f2[i]);
}

}  // namespace bandlim::kernels
