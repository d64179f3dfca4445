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

#include "bandlim/kernels.hpp"

#include <atomic>

#include "bandlim/error.hpp"
#include "kernels_backend.hpp"

namespace bandlim::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BANDLIM_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_best() {
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_best()};
  return slot;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

std::vector<Backend> available_backends() {
  std::vector<Backend> v{Backend::scalar};
  if (backend_available(Backend::avx2)) v.push_back(Backend::avx2);
  return v;
}

Backend active_backend() { return backend_slot().load(); }

void set_backend(Backend b) {
  if (!backend_available(b))
    throw Error(Errc::unsupported,
                std::string("kernel backend not available on this host: ") +
                    backend_name(b));
  backend_slot().store(b);
}

void sincos_turns(const double* t, double* c, double* s, std::size_t n) {
#if defined(BANDLIM_HAVE_AVX2_TU)
  if (active_backend() == Backend::avx2) {
    sincos_turns_avx2(t, c, s, n);
    return;
  }
#endif
  sincos_turns_scalar(t, c, s, n);
}

void linear_phases(double m0, double m1, double m2, const double* f0,
                   const double* f1, const double* f2, double* t,
                   std::size_t n) {
#if defined(BANDLIM_HAVE_AVX2_TU)
  if (active_backend() == Backend::avx2) {
    linear_phases_avx2(m0, m1, m2, f0, f1, f2, t, n);
    return;
  }
#endif
  linear_phases_scalar(m0, m1, m2, f0, f1, f2, t, n);
}

}  // namespace bandlim::kernels
