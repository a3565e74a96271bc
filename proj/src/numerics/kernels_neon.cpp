// Copyright 2026 The cetx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cetx/numerics/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#define CETX_HAVE_NEON 1
#include <arm_neon.h>
#else
#define CETX_HAVE_NEON 0
#endif

namespace cetx::simd {

#if CETX_HAVE_NEON
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double dot3_neon(const double* x, const double* y, const double* z, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t xy = vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    acc = vfmaq_f64(acc, xy, vld1q_f64(z + i));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += x[i] * y[i] * z[i];
  return out;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_mul_neon(double a, const double* x, const double* z, double* y,
                   std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t ax = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), ax, vld1q_f64(z + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i] * z[i];
}

}  // namespace

std::optional<KernelTable> neon_kernels() {
  return KernelTable{Isa::kNeon, dot_neon, dot3_neon, axpy_neon, axpy_mul_neon};
}
#else
std::optional<KernelTable> neon_kernels() { return std::nullopt; }
#endif

}  // namespace cetx::simd
