// Copyright 2026 The Authors.
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

#ifndef MATLINK_MATRIX_HPP_
#define MATLINK_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matlink/field.hpp"

namespace matlink {

using Mask = std::uint64_t;

// Dense row-major matrix over a FieldSpec. Finite-field entries are stored as
// element codes, rational entries as reduced fractions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  // Row-major element codes (finite fields) or integers (rationals).
  static Matrix from_codes(FieldPtr field, std::size_t rows, std::size_t cols,
                           std::span<const std::uint32_t> codes);
  static Matrix from_ints(FieldPtr field, std::size_t rows, std::size_t cols,
                          std::initializer_list<long long> values);
  static Matrix from_columns(FieldPtr field, std::size_t rows,
                             const std::vector<std::vector<Scalar>>& columns);
  static Matrix from_storage(FieldPtr field, std::size_t rows, std::size_t cols,
                             std::vector<FieldSpec::Elem> codes);
  static Matrix from_storage(FieldPtr field, std::size_t rows, std::size_t cols,
                             std::vector<Rational> values);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_finite() const { return field_ && field_->is_finite(); }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  FieldSpec::Elem code(std::size_t i, std::size_t j) const {
    return codes_[i * cols_ + j];
  }
  void set_code(std::size_t i, std::size_t j, FieldSpec::Elem c);
  const Rational& rational(std::size_t i, std::size_t j) const {
    return rationals_[i * cols_ + j];
  }

  const std::vector<FieldSpec::Elem>& codes() const { return codes_; }
  const std::vector<Rational>& rationals() const { return rationals_; }

  std::vector<Scalar> column(std::size_t j) const;
  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix hconcat(const Matrix& right) const;

  // Rank of the columns in `cols` (bit j selects column j; needs cols() <= 64).
  std::size_t column_rank(Mask cols) const;

  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldSpec::Elem> codes_;
  std::vector<Rational> rationals_;
  // GF(2) columns packed as row bitmasks; populated when rows <= 64.
  std::vector<std::uint64_t> gf2_columns_;

  void pack_gf2();
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref_rank(const Matrix& m);
std::size_t rank(const Matrix& m);

Matrix multiply(const Matrix& a, const Matrix& b);

// Basis of the null space, one column per free variable of the RREF.
Matrix kernel_basis(const Matrix& m);

// Canonical basis of the column span: the nonzero rows of rref(m^T), returned
// as columns. Two matrices span the same space iff these are equal.
Matrix column_space_basis(const Matrix& m);

// Canonical basis of <b1> ∩ <b2>.
Matrix subspace_intersect(const Matrix& b1, const Matrix& b2);

// Pivots on each listed column in order: the column becomes a unit vector in a
// fresh row when it is independent of the columns pivoted before it. Rows used
// as pivots are reported in order; dependent columns are skipped.
struct PivotResult {
  Matrix reduced;
  std::vector<std::size_t> pivot_rows;
};
PivotResult pivot_columns(const Matrix& m, std::span<const std::size_t> cols);

// Coefficients c with b * c = v, or nullopt when v is outside <b>. Free
// variables are set to zero.
std::optional<std::vector<Scalar>> solve_membership(const Matrix& b,
                                                    std::span<const Scalar> v);

}  // namespace matlink

#endif  // MATLINK_MATRIX_HPP_
