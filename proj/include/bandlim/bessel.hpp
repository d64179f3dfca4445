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

#ifndef BANDLIM_BESSEL_HPP
#define BANDLIM_BESSEL_HPP

namespace bandlim {

// Cylindrical Bessel J0, the 2D inverse-transform kernel. Ascending series
// below the crossover at x = 12, Hankel asymptotic expansion above.
double bessel_j0(double x);

}  // namespace bandlim

#endif  // BANDLIM_BESSEL_HPP
