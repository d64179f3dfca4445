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

#ifndef BANDLIM_SRC_KERNELS_BACKEND_HPP
#define BANDLIM_SRC_KERNELS_BACKEND_HPP

#include <cstddef>

namespace bandlim::kernels {

void sincos_turns_scalar(const double* t, double* c, double* s, std::size_t n);
void linear_phases_scalar(double m0, double m1, double m2, const double* f0,
                          const double* f1, const double* f2, double* t,
                          std::size_t n);

#if defined(BANDLIM_HAVE_AVX2_TU)
void sincos_turns_avx2(const double* t, double* c, double* s, std::size_t n);
void linear_phases_avx2(double m0, double m1, double m2, const double* f0,
                        const double* f1, const double* f2, double* t,
                        std::size_t n);
#endif

}  // namespace bandlim::kernels

#endif  // BANDLIM_SRC_KERNELS_BACKEND_HPP
