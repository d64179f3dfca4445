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

// AVX2+FMA lanes of the phase kernels. This translation unit is compiled
// with -mavx2 -mfma and is only called after a runtime cpuid check. Each
// step mirrors kernels_core.hpp so the output is bit-identical to the
// scalar backend.

#include <immintrin.h>

#include "kernels_backend.hpp"
#include "kernels_core.hpp"

namespace bandlim::kernels {

namespace {

inline __m256d round_nearest(__m256d x) {
  return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
}

// 4-lane sin/cos of 2*pi*t.
inline void sincos4(__m256d t, __m256d& s_out, __m256d& c_out) {
  const __m256d u = _mm256_sub_pd(t, round_nearest(t));
  const __m256d q = round_nearest(_mm256_mul_pd(_mm256_set1_pd(4.0), u));
  const __m256d w =
      _mm256_sub_pd(u, _mm256_mul_pd(_mm256_set1_pd(0.25), q));
  const __m256d w2 = _mm256_mul_pd(w, w);

  __m256d sp = _mm256_set1_pd(detail::kSin[8]);
  for (int i = 7; i >= 0; --i)
    sp = _mm256_fmadd_pd(sp, w2, _mm256_set1_pd(detail::kSin[i]));
  const __m256d ss = _mm256_mul_pd(w, sp);

  __m256d cc = _mm256_set1_pd(detail::kCos[9]);
  for (int i = 8; i >= 0; --i)
    cc = _mm256_fmadd_pd(cc, w2, _mm256_set1_pd(detail::kCos[i]));

  // Quadrant handling: swap when q&1, flip sin when q&2, flip cos when
  // (q&2) xor (q&1).
  const __m128i qi = _mm256_cvtpd_epi32(q);
  const __m256i q64 = _mm256_cvtepi32_epi64(qi);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256i bit0 = _mm256_and_si256(q64, one);
  const __m256i bit1 = _mm256_and_si256(q64, two);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, one));
  const __m256d flip_s =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, two));
  const __m256d flip_c = _mm256_xor_pd(flip_s, swap);

  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d s = _mm256_blendv_pd(ss, cc, swap);
  __m256d c = _mm256_blendv_pd(cc, ss, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(sign, flip_s));
  c = _mm256_xor_pd(c, _mm256_and_pd(sign, flip_c));
  s_out = s;
  c_out = c;
}

}  // namespace

void sincos_turns_avx2(const double* t, double* c, double* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d sv, cv;
    sincos4(_mm256_loadu_pd(t + i), sv, cv);
    _mm256_storeu_pd(s + i, sv);
    _mm256_storeu_pd(c + i, cv);
  }
  if (i < n) sincos_turns_scalar(t + i, c + i, s + i, n - i);
}

void linear_phases_avx2(double m0, double m1, double m2, const double* f0,
                        const double* f1, const double* f2, double* t,
                        std::size_t n) {
  const __m256d vm0 = _mm256_set1_pd(m0);
  const __m256d vm1 = _mm256_set1_pd(m1);
  const __m256d vm2 = _mm256_set1_pd(m2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(vm0, _mm256_loadu_pd(f0 + i));
    acc = _mm256_fmadd_pd(vm1, _mm256_loadu_pd(f1 + i), acc);
    acc = _mm256_fmadd_pd(vm2, _mm256_loadu_pd(f2 + i), acc);
    _mm256_storeu_pd(t + i, acc);
  }
  if (i < n)
    linear_phases_scalar(m0, m1, m2, f0 + i, f1 + i, f2 + i, t + i, n - i);
}

}  // namespace bandlim::kernels
