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

#include <functional>

#include "cetx/numerics/matrix.hpp"

namespace cetx {

using ScalarFunction = std::function<double(const Matrix&)>;

// Central-difference gradient of f at x, one coordinate at a time.
// Throws NumericError if f returns a non-finite value at any probe.
Matrix finite_diff_grad(const ScalarFunction& f, const Matrix& x, double h = 1e-5);

// Largest elementwise |a_i - b_i| / max(|a_i|, |b_i|, floor). The floor keeps
// entries that are zero in both from dividing by zero.
double max_relative_error(const Matrix& a, const Matrix& b, double floor = 1e-8);

}  // namespace cetx
