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

#ifndef BANDLIM_KERNELS_HPP
#define BANDLIM_KERNELS_HPP

#include <cstddef>
#include <vector>

namespace bandlim::kernels {

// Elementwise kernels behind the phase sums and oscillatory quadratures.
// Phases are given in turns (multiples of 2*pi): the callers keep integer
// reciprocal rows and fractional coordinates separate, so the argument
// reduction u = t - round(t) is exact and the backends agree bit for bit.
enum class Backend { scalar = 0, avx2 = 1 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
std::vector<Backend> available_backends();
Backend active_backend();
void set_backend(Backend b);  // throws Error(unsupported) when unavailable

// c[i] = cos(2 pi t[i]), s[i] = sin(2 pi t[i]).
void sincos_turns(const double* t, double* c, double* s, std::size_t n);

// t[i] = m0*f0[i] + m1*f1[i] + m2*f2[i] with a fixed fma contraction order.
// All three pointers must be valid for n elements; unused dimensions carry
// m = 0 and zero-filled arrays.
void linear_phases(double m0, double m1, double m2, const double* f0,
                   const double* f1, const double* f2, double* t,
                   std::size_t n);

}  // namespace bandlim::kernels

#endif  // BANDLIM_KERNELS_HPP
