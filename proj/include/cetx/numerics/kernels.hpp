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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

// Inner-loop kernels with a scalar reference implementation and SIMD variants
// (AVX2+FMA on x86-64, NEON on aarch64). The active variant is picked once at
// startup from CPU features and can be pinned with set_isa().
//
// Variants are not bit-identical to each other (summation order and FMA
// contraction differ). Within one process the selection is fixed, so every
// computation is deterministic run to run.
namespace cetx::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i] * y[i] * z[i]
  double (*dot3)(const double* x, const double* y, const double* z, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y[i] += a * x[i] * z[i]
  void (*axpy_mul)(double a, const double* x, const double* z, double* y,
                   std::size_t n);
};

const KernelTable& scalar_kernels();
// nullopt when the variant was not compiled in or the CPU lacks support.
std::optional<KernelTable> avx2_kernels();
std::optional<KernelTable> neon_kernels();

const KernelTable& active();
Isa active_isa();
// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool set_isa(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double dot3(std::span<const double> x, std::span<const double> y,
                   std::span<const double> z) {
  return active().dot3(x.data(), y.data(), z.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void axpy_mul(double a, std::span<const double> x, std::span<const double> z,
                     std::span<double> y) {
  active().axpy_mul(a, x.data(), z.data(), y.data(), x.size());
}

}  // namespace cetx::simd
