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

#include <cstdint>
#include <span>
#include <vector>

#include "cetx/numerics/matrix.hpp"

namespace cetx {

struct AdamSettings {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moment buffers for one parameter block.
class AdamState {
 public:
  AdamState() = default;
  AdamState(std::size_t size, AdamSettings settings = {});

  const AdamSettings& settings() const { return settings_; }
  std::uint64_t step() const { return step_; }
  std::size_t size() const { return first_.size(); }
  std::span<const double> first_moment() const { return first_; }
  std::span<const double> second_moment() const { return second_; }

  // One bias-corrected Adam step applied to `params` in place.
  void apply(std::span<double> params, std::span<const double> grads);

 private:
  AdamSettings settings_;
  std::uint64_t step_ = 0;
  std::vector<double> first_;
  std::vector<double> second_;
};

// Returns the updated parameters; `state` advances by one step.
Matrix adam_update(const Matrix& params, const Matrix& grads, AdamState& state);

}  // namespace cetx
