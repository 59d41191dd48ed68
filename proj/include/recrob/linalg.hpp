// Copyright 2026 The recrob Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "recrob/error.hpp"

namespace recrob {

using Vector = std::vector<double>;

/// Dense row-major matrix. Zero rows is a valid state (an empty constraint
/// block still knows its column count).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require(r.size() == cols_, Errc::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, Errc::DimensionMismatch, "ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  void append_row(std::span<const double> r) {
    require(r.size() == cols_, Errc::DimensionMismatch, "appended row has wrong width");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "dot product of unequal lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vector subtract(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "vector difference of unequal lengths");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector multiply(const Matrix& m, std::span<const double> x) {
  require(m.cols() == x.size(), Errc::DimensionMismatch, "matrix-vector width mismatch");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), x);
  return out;
}

inline double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double norm_inf(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

/// Numerical rank by Gaussian elimination with partial pivoting.
inline std::size_t rank(Matrix m, double tol = 1e-10) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
    if (std::abs(m(piv, c)) <= tol) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const double f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// A real number or +infinity. The infinite state is a flag, not a float,
/// and reading its value is an error.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  // Accepts +inf as the infinite state; NaN and -inf are rejected.
  ExtReal(double v) : value_(v) {  // NOLINT: implicit by intent
    if (v == HUGE_VAL) {
      value_ = 0.0;
      infinite_ = true;
    } else {
      require(std::isfinite(v), Errc::NonFiniteData, "ExtReal from NaN or -inf");
    }
  }

  static constexpr ExtReal infinity() {
    ExtReal e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  double value() const {
    require(!infinite_, Errc::InfiniteValue, "arithmetic on an infinite value");
    return value_;
  }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace recrob
