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

#include <atomic>
#include <cstdlib>

#include "cetx/numerics/kernels.hpp"

namespace cetx::simd {
namespace {

const KernelTable* table_for(Isa isa) {
  static const std::optional<KernelTable> avx2 = avx2_kernels();
  static const std::optional<KernelTable> neon = neon_kernels();
  switch (isa) {
    case Isa::kScalar:
      return &scalar_kernels();
    case Isa::kAvx2:
      return avx2 ? &*avx2 : nullptr;
    case Isa::kNeon:
      return neon ? &*neon : nullptr;
  }
  return nullptr;
}

const KernelTable* detect() {
  // CETX_SIMD=scalar|avx2|neon pins the table when that ISA is available.
  if (const char* want = std::getenv("CETX_SIMD")) {
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (isa_name(isa) != want) continue;
      if (const KernelTable* t = table_for(isa)) return t;
    }
  }
  if (const KernelTable* t = table_for(Isa::kAvx2)) return t;
  if (const KernelTable* t = table_for(Isa::kNeon)) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

Isa active_isa() { return active().isa; }

bool set_isa(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace cetx::simd
