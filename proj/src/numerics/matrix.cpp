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

#include "cetx/numerics/matrix.hpp"

#include <cmath>
#include <sstream>

#include "cetx/errors.hpp"
#include "cetx/numerics/kernels.hpp"

namespace cetx {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix data length " << data_.size() << " does not match shape (" << rows
       << " x " << cols << ")";
    throw DimensionError(os.str());
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string Matrix::shape_string() const {
  std::ostringstream os;
  os << "(" << rows_ << " x " << cols_ << ")";
  return os.str();
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + a.shape_string() +
                         " vs " + b.shape_string());
  }
}

namespace {

[[noreturn]] void shape_error(const char* op, const Matrix& a, const Matrix& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + a.shape_string() +
                       " and " + b.shape_string());
}

void check_finite(const Matrix& m, const char* op) {
  if (!m.all_finite()) throw NumericError(std::string(op) + ": non-finite result");
}

}  // namespace

void matmul_acc(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  if (out.rows() != a.rows() || out.cols() != b.cols()) shape_error("matmul", a, out);
  const auto& k = simd::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* dst = out.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      if (s == 0.0) continue;
      k.axpy(s, b.row(p).data(), dst, b.cols());
    }
  }
}

void matmul_tn_acc(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows() != b.rows()) shape_error("matmul_tn", a, b);
  if (out.rows() != a.cols() || out.cols() != b.cols()) shape_error("matmul_tn", a, out);
  const auto& k = simd::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* src = b.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      if (s == 0.0) continue;
      k.axpy(s, src, out.row(p).data(), b.cols());
    }
  }
}

void matmul_nt_acc(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.cols()) shape_error("matmul_nt", a, b);
  if (out.rows() != a.rows() || out.cols() != b.rows()) shape_error("matmul_nt", a, out);
  const auto& k = simd::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      out(i, j) += k.dot(a.row(i).data(), b.row(j).data(), a.cols());
    }
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  Matrix out(a.rows(), b.cols());
  matmul_acc(a, b, out);
  check_finite(out, "matmul");
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) shape_error("matmul_tn", a, b);
  Matrix out(a.cols(), b.cols());
  matmul_tn_acc(a, b, out);
  check_finite(out, "matmul_tn");
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) shape_error("matmul_nt", a, b);
  Matrix out(a.rows(), b.rows());
  matmul_nt_acc(a, b, out);
  check_finite(out, "matmul_nt");
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

}  // namespace cetx
