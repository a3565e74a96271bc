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

#include "cetx/numerics/adam.hpp"

#include <cmath>
#include <string>

#include "cetx/errors.hpp"

namespace cetx {

AdamState::AdamState(std::size_t size, AdamSettings settings)
    : settings_(settings), first_(size, 0.0), second_(size, 0.0) {}

void AdamState::apply(std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size() || params.size() != first_.size()) {
    throw DimensionError("adam: parameter (" + std::to_string(params.size()) +
                         "), gradient (" + std::to_string(grads.size()) +
                         ") and state (" + std::to_string(first_.size()) +
                         ") sizes differ");
  }
  ++step_;
  const auto& s = settings_;
  const double t = static_cast<double>(step_);
  const double bias1 = 1.0 - std::pow(s.beta1, t);
  const double bias2 = 1.0 - std::pow(s.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    first_[i] = s.beta1 * first_[i] + (1.0 - s.beta1) * g;
    second_[i] = s.beta2 * second_[i] + (1.0 - s.beta2) * g * g;
    const double m_hat = first_[i] / bias1;
    const double v_hat = second_[i] / bias2;
    params[i] -= s.lr * m_hat / (std::sqrt(v_hat) + s.epsilon);
  }
}

Matrix adam_update(const Matrix& params, const Matrix& grads, AdamState& state) {
  require_same_shape(params, grads, "adam_update");
  Matrix out = params;
  state.apply(out.values(), grads.values());
  return out;
}

}  // namespace cetx
