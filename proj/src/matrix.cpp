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

#include "matlink/matrix.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <utility>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

struct FiniteArith {
  using T = FieldSpec::Elem;
  const FieldSpec* f;

  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const { return f->add(a, b); }
  T sub(T a, T b) const { return f->sub(a, b); }
  T mul(T a, T b) const { return f->mul(a, b); }
  T inv(T a) const { return f->inv(a); }
  T neg(T a) const { return f->neg(a); }
  static const std::vector<T>& data(const Matrix& m) { return m.codes(); }
};

struct RationalArith {
  using T = Rational;

  T zero() const { return T(0); }
  T one() const { return T(1); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return T(1) / a; }
  T neg(const T& a) const { return -a; }
  static const std::vector<T>& data(const Matrix& m) { return m.rationals(); }
};

template <class Fn>
decltype(auto) with_arith(const FieldPtr& field, Fn&& fn) {
  if (field->is_finite()) return fn(FiniteArith{field.get()});
  return fn(RationalArith{});
}

// Reduces a (rows x cols, row-major) to RREF; returns the pivot columns.
template <class A>
std::vector<std::size_t> rref_in_place(const A& ar, std::vector<typename A::T>& a,
                                       std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && ar.is_zero(a[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const auto scale = ar.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ar.mul(a[r * cols + j], scale);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || ar.is_zero(a[i * cols + c])) continue;
      const auto factor = a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j) {
        a[i * cols + j] = ar.sub(a[i * cols + j], ar.mul(factor, a[r * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class A>
std::vector<typename A::T> transposed(const A&, const Matrix& m) {
  const auto& src = A::data(m);
  std::vector<typename A::T> out(src.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[j * m.rows() + i] = src[i * m.cols() + j];
  }
  return out;
}

// Echelon-insertion rank of the selected columns, treating each column as a
// vector of length `rows`.
template <class A>
std::size_t generic_column_rank(const A& ar, const std::vector<typename A::T>& data,
                                std::size_t rows, std::size_t cols, Mask mask) {
  using T = typename A::T;
  std::vector<T> basis;
  std::vector<std::size_t> lead;
  std::vector<T> v(rows);
  while (mask != 0) {
    const auto j = static_cast<std::size_t>(std::countr_zero(mask));
    mask &= mask - 1;
    for (std::size_t i = 0; i < rows; ++i) v[i] = data[i * cols + j];
    for (std::size_t b = 0; b < lead.size(); ++b) {
      const T factor = v[lead[b]];
      if (ar.is_zero(factor)) continue;
      for (std::size_t i = 0; i < rows; ++i) {
        v[i] = ar.sub(v[i], ar.mul(factor, basis[b * rows + i]));
      }
    }
    std::size_t p = 0;
    while (p < rows && ar.is_zero(v[p])) ++p;
    if (p == rows) continue;
    const T scale = ar.inv(v[p]);
    for (std::size_t i = 0; i < rows; ++i) basis.push_back(ar.mul(v[i], scale));
    lead.push_back(p);
    if (lead.size() == rows) break;
  }
  return lead.size();
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!same_field(a.field(), b.field())) {
    throw Error(ErrorCode::kFieldMismatch, "matrices over different fields");
  }
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (field_->is_finite()) {
    codes_.assign(rows * cols, 0);
  } else {
    rationals_.assign(rows * cols, Rational(0));
  }
  pack_gf2();
}

Matrix Matrix::from_storage(FieldPtr field, std::size_t rows, std::size_t cols,
                            std::vector<FieldSpec::Elem> codes) {
  if (codes.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count does not match shape");
  }
  Matrix m;
  m.field_ = std::move(field);
  m.rows_ = rows;
  m.cols_ = cols;
  if (!m.field_->is_finite()) {
    m.rationals_.reserve(codes.size());
    for (auto c : codes) m.rationals_.emplace_back(static_cast<long long>(c));
  } else {
    for (auto c : codes) {
      if (c >= m.field_->order()) {
        throw Error(ErrorCode::kFieldMismatch, "element code outside the field");
      }
    }
    m.codes_ = std::move(codes);
  }
  m.pack_gf2();
  return m;
}

Matrix Matrix::from_storage(FieldPtr field, std::size_t rows, std::size_t cols,
                            std::vector<Rational> values) {
  if (field->is_finite()) {
    throw Error(ErrorCode::kFieldMismatch, "rational entries for a finite field");
  }
  if (values.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count does not match shape");
  }
  Matrix m;
  m.field_ = std::move(field);
  m.rows_ = rows;
  m.cols_ = cols;
  m.rationals_ = std::move(values);
  return m;
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(m.field_));
  return m;
}

Matrix Matrix::from_codes(FieldPtr field, std::size_t rows, std::size_t cols,
                          std::span<const std::uint32_t> codes) {
  return from_storage(std::move(field), rows, cols,
                      std::vector<FieldSpec::Elem>(codes.begin(), codes.end()));
}

Matrix Matrix::from_ints(FieldPtr field, std::size_t rows, std::size_t cols,
                         std::initializer_list<long long> values) {
  if (values.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count does not match shape");
  }
  Matrix m(std::move(field), rows, cols);
  std::size_t k = 0;
  for (long long v : values) {
    m.set(k / cols, k % cols, Scalar::from_int(m.field_, v));
    ++k;
  }
  return m;
}

Matrix Matrix::from_columns(FieldPtr field, std::size_t rows,
                            const std::vector<std::vector<Scalar>>& columns) {
  Matrix m(std::move(field), rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw Error(ErrorCode::kAmbientMismatch, "column length differs from row count");
    }
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, columns[j][i]);
  }
  return m;
}

void Matrix::pack_gf2() {
  gf2_columns_.clear();
  if (!field_ || field_->order() != 2 || rows_ > 64) return;
  gf2_columns_.assign(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (codes_[i * cols_ + j] != 0) gf2_columns_[j] |= std::uint64_t{1} << i;
    }
  }
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (field_->is_finite()) return Scalar(field_, codes_[i * cols_ + j]);
  return Scalar(field_, rationals_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  if (!same_field(value.field(), field_)) {
    throw Error(ErrorCode::kFieldMismatch, "entry from a different field");
  }
  if (field_->is_finite()) {
    set_code(i, j, value.code());
  } else {
    rationals_[i * cols_ + j] = value.rational();
  }
}

void Matrix::set_code(std::size_t i, std::size_t j, FieldSpec::Elem c) {
  codes_[i * cols_ + j] = c;
  if (!gf2_columns_.empty()) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    gf2_columns_[j] = c ? (gf2_columns_[j] | bit) : (gf2_columns_[j] & ~bit);
  }
}

std::vector<Scalar> Matrix::column(std::size_t j) const {
  std::vector<Scalar> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  return with_arith(field_, [&](auto ar) {
    return from_storage(field_, cols_, rows_, transposed(ar, *this));
  });
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  return with_arith(field_, [&](auto ar) {
    const auto& src = decltype(ar)::data(*this);
    std::vector<typename decltype(ar)::T> out;
    out.reserve(rows_ * cols.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j : cols) out.push_back(src.at(i * cols_ + j));
    }
    return from_storage(field_, rows_, cols.size(), std::move(out));
  });
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  return with_arith(field_, [&](auto ar) {
    const auto& src = decltype(ar)::data(*this);
    std::vector<typename decltype(ar)::T> out;
    out.reserve(rows.size() * cols_);
    for (std::size_t i : rows) {
      for (std::size_t j = 0; j < cols_; ++j) out.push_back(src.at(i * cols_ + j));
    }
    return from_storage(field_, rows.size(), cols_, std::move(out));
  });
}

Matrix Matrix::hconcat(const Matrix& right) const {
  require_same_field(*this, right);
  if (rows_ != right.rows_) {
    throw Error(ErrorCode::kAmbientMismatch, "hconcat of matrices with different row counts");
  }
  return with_arith(field_, [&](auto ar) {
    const auto& a = decltype(ar)::data(*this);
    const auto& b = decltype(ar)::data(right);
    std::vector<typename decltype(ar)::T> out;
    out.reserve(rows_ * (cols_ + right.cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.push_back(a[i * cols_ + j]);
      for (std::size_t j = 0; j < right.cols_; ++j) out.push_back(b[i * right.cols_ + j]);
    }
    return from_storage(field_, rows_, cols_ + right.cols_, std::move(out));
  });
}

std::size_t Matrix::column_rank(Mask cols) const {
  if (!gf2_columns_.empty()) {
    std::array<std::uint64_t, 64> basis{};
    std::size_t r = 0;
    while (cols != 0) {
      std::uint64_t v = gf2_columns_[static_cast<std::size_t>(std::countr_zero(cols))];
      cols &= cols - 1;
      while (v != 0) {
        const int hb = 63 - std::countl_zero(v);
        if (basis[hb] == 0) {
          basis[hb] = v;
          ++r;
          break;
        }
        v ^= basis[hb];
      }
      if (r == rows_) break;
    }
    return r;
  }
  if (field_->is_finite()) {
    return generic_column_rank(FiniteArith{field_.get()}, codes_, rows_, cols_, cols);
  }
  return generic_column_rank(RationalArith{}, rationals_, rows_, cols_, cols);
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).to_string();
    }
    os << '\n';
  }
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  return same_field(a.field_, b.field_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.codes_ == b.codes_ && a.rationals_ == b.rationals_;
}

RrefResult rref_rank(const Matrix& m) {
  return with_arith(m.field(), [&](auto ar) {
    auto data = decltype(ar)::data(m);
    auto pivots = rref_in_place(ar, data, m.rows(), m.cols());
    const std::size_t r = pivots.size();
    return RrefResult{Matrix::from_storage(m.field(), m.rows(), m.cols(), std::move(data)), r,
                      std::move(pivots)};
  });
}

std::size_t rank(const Matrix& m) {
  if (m.cols() <= 64) {
    return m.column_rank(m.cols() == 64 ? ~Mask{0} : ((Mask{1} << m.cols()) - 1));
  }
  return rref_rank(m).rank;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kAmbientMismatch, "inner dimensions differ");
  }
  return with_arith(a.field(), [&](auto ar) {
    const auto& x = decltype(ar)::data(a);
    const auto& y = decltype(ar)::data(b);
    std::vector<typename decltype(ar)::T> out(a.rows() * b.cols(), ar.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const auto& aik = x[i * a.cols() + k];
        if (ar.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
          auto& dst = out[i * b.cols() + j];
          dst = ar.add(dst, ar.mul(aik, y[k * b.cols() + j]));
        }
      }
    }
    return Matrix::from_storage(a.field(), a.rows(), b.cols(), std::move(out));
  });
}

Matrix kernel_basis(const Matrix& m) {
  return with_arith(m.field(), [&](auto ar) {
    auto data = decltype(ar)::data(m);
    const auto pivots = rref_in_place(ar, data, m.rows(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_pivot[j]) free_cols.push_back(j);
    }
    std::vector<typename decltype(ar)::T> out(m.cols() * free_cols.size(), ar.zero());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      out[free_cols[f] * free_cols.size() + f] = ar.one();
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        out[pivots[i] * free_cols.size() + f] = ar.neg(data[i * m.cols() + free_cols[f]]);
      }
    }
    return Matrix::from_storage(m.field(), m.cols(), free_cols.size(), std::move(out));
  });
}

Matrix column_space_basis(const Matrix& m) {
  const RrefResult t = rref_rank(m.transpose());
  std::vector<std::size_t> keep(t.rank);
  for (std::size_t i = 0; i < t.rank; ++i) keep[i] = i;
  return t.reduced.select_rows(keep).transpose();
}

Matrix subspace_intersect(const Matrix& b1, const Matrix& b2) {
  require_same_field(b1, b2);
  if (b1.rows() != b2.rows()) {
    throw Error(ErrorCode::kAmbientMismatch, "subspaces live in different ambient spaces");
  }
  // (x, y) in ker [b1 | b2] gives b1 x = -b2 y in both spans.
  const Matrix k = kernel_basis(b1.hconcat(b2));
  std::vector<std::size_t> top(b1.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  const Matrix vectors = multiply(b1, k.select_rows(top));
  return column_space_basis(vectors);
}

PivotResult pivot_columns(const Matrix& m, std::span<const std::size_t> cols) {
  return with_arith(m.field(), [&](auto ar) {
    auto a = decltype(ar)::data(m);
    const std::size_t rows = m.rows();
    const std::size_t width = m.cols();
    std::vector<bool> used(rows, false);
    std::vector<std::size_t> pivot_rows;
    for (std::size_t c : cols) {
      std::size_t piv = 0;
      while (piv < rows && (used[piv] || ar.is_zero(a[piv * width + c]))) ++piv;
      if (piv == rows) continue;
      const auto scale = ar.inv(a[piv * width + c]);
      for (std::size_t j = 0; j < width; ++j) a[piv * width + j] = ar.mul(a[piv * width + j], scale);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == piv || ar.is_zero(a[i * width + c])) continue;
        const auto factor = a[i * width + c];
        for (std::size_t j = 0; j < width; ++j) {
          a[i * width + j] = ar.sub(a[i * width + j], ar.mul(factor, a[piv * width + j]));
        }
      }
      used[piv] = true;
      pivot_rows.push_back(piv);
    }
    return PivotResult{Matrix::from_storage(m.field(), rows, width, std::move(a)),
                       std::move(pivot_rows)};
  });
}

std::optional<std::vector<Scalar>> solve_membership(const Matrix& b,
                                                    std::span<const Scalar> v) {
  if (v.size() != b.rows()) {
    throw Error(ErrorCode::kAmbientMismatch, "vector length differs from ambient dimension");
  }
  const Matrix rhs = Matrix::from_columns(b.field(), b.rows(), {std::vector<Scalar>(v.begin(), v.end())});
  const RrefResult r = rref_rank(b.hconcat(rhs));
  if (!r.pivots.empty() && r.pivots.back() == b.cols()) return std::nullopt;
  std::vector<Scalar> coeffs(b.cols(), Scalar::zero(b.field()));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    coeffs[r.pivots[i]] = r.reduced.at(i, b.cols());
  }
  return coeffs;
}

}  // namespace matlink
