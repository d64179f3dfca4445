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

#ifndef BANDLIM_SRC_KERNELS_CORE_HPP
#define BANDLIM_SRC_KERNELS_CORE_HPP

#include <cmath>

// Shared scalar core for sin/cos of phases in turns. The SIMD backends
// mirror this operation for operation (same polynomials, same fused ops),
// which makes scalar and vector lanes bit-identical and lets the
// equivalence tests compare exactly.
//
// Reduction: u = t - round(t) in [-1/2, 1/2] (exact), octant q = round(4u),
// w = u - q/4 in [-1/8, 1/8] (exact), then Taylor polynomials of sin(2 pi w)
// and cos(2 pi w) and a quadrant swap. Truncation error is below half an ulp
// on the reduced range.

namespace bandlim::kernels::detail {

// sin(2 pi w) = w * (S0 + S1 w^2 + ... + S8 w^16)
inline constexpr double kSin[9] = {
    6.283185307179586477e+00,  -4.134170224039976023e+01,
    8.160524927607505420e+01,  -7.670585975306138584e+01,
    4.205869394489765314e+01,  -1.509464257682299039e+01,
    3.819952584848282128e+00,  -7.181223017785005122e-01,
    1.042291622081398412e-01,
};

// cos(2 pi w) = C0 + C1 w^2 + ... + C9 w^18
inline constexpr double kCos[10] = {
    1.000000000000000000e+00,  -1.973920880217871724e+01,
    6.493939402266829149e+01,  -8.545681720669372774e+01,
    6.024464137187666036e+01,  -2.642625678337439745e+01,
    7.903536371318468804e+00,  -1.714390711088672065e+00,
    2.820059684557912151e-01,  -3.638284114254567077e-02,
};

struct SinCos {
  double s;
  double c;
};

inline SinCos sincos_turn(double t) {
  const double u = t - std::nearbyint(t);
  const double q = std::nearbyint(4.0 * u);
  const double w = u - 0.25 * q;
  const double w2 = w * w;

  double sp = kSin[8];
  for (int i = 7; i >= 0; --i) sp = std::fma(sp, w2, kSin[i]);
  const double ss = w * sp;

  double cc = kCos[9];
  for (int i = 8; i >= 0; --i) cc = std::fma(cc, w2, kCos[i]);

  SinCos r{};
  switch (static_cast<int>(q) & 3) {
    case 0:
      r.s = ss;
      r.c = cc;
      break;
    case 1:
      r.s = cc;
      r.c = -ss;
      break;
    case 2:
      r.s = -ss;
      r.c = -cc;
      break;
    default:
      r.s = -cc;
      r.c = ss;
      break;
  }
  return r;
}

inline double linear_phase(double m0, double m1, double m2, double f0,
                           double f1, double f2) {
  return std::fma(m2, f2, std::fma(m1, f1, m0 * f0));
}

}  // namespace bandlim::kernels::detail

#endif  // BANDLIM_SRC_KERNELS_CORE_HPP
