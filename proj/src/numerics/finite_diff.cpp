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

#include "cetx/numerics/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cetx/errors.hpp"

namespace cetx {

Matrix finite_diff_grad(const ScalarFunction& f, const Matrix& x, double h) {
  Matrix grad(x.rows(), x.cols());
  Matrix probe = x;
  auto values = probe.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double saved = values[i];
    values[i] = saved + h;
    const double up = f(probe);
    values[i] = saved - h;
    const double down = f(probe);
    values[i] = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NumericError("finite_diff_grad: non-finite function value at coordinate " +
                         std::to_string(i));
    }
    grad.values()[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double max_relative_error(const Matrix& a, const Matrix& b, double floor) {
  require_same_shape(a, b, "max_relative_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.values()[i];
    const double y = b.values()[i];
    const double scale = std::max({std::abs(x), std::abs(y), floor});
    worst = std::max(worst, std::abs(x - y) / scale);
  }
  return worst;
}

}  // namespace cetx
