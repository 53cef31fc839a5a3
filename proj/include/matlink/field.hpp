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

#ifndef MATLINK_FIELD_HPP_
#define MATLINK_FIELD_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace matlink {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { kPrime, kExtension, kRationals };

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// An exact arithmetic domain: GF(p), GF(p^d) = GF(p)[x]/(modulus), or Q.
//
// Finite-field elements are encoded as integers in [0, q). For GF(p^d) the
// code of c_0 + c_1 x + ... + c_{d-1} x^{d-1} is sum c_i p^i, so 0 and 1 are
// the additive and multiplicative identities in every finite field.
class FieldSpec {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  static FieldPtr prime(std::uint32_t p);
  // modulus holds coefficients from the constant term up; it must be monic of
  // degree >= 2 and irreducible over GF(p).
  static FieldPtr extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  static FieldPtr rationals();
  // GF(q) with the built-in modulus for q in {4, 8, 9}; other prime powers use
  // the least monic irreducible in coefficient order.
  static FieldPtr gf(std::uint32_t q);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FieldKind::kRationals; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return d_; }
  // q = p^d, or 0 for the rationals.
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  // "gf(5)", "gf(9) modulus=x^2+1", "rationals"
  std::string describe() const;

  bool operator==(const FieldSpec& other) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem from_int(long long value) const;

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

 private:
  FieldSpec() = default;
  void build_tables();
  Elem slow_mul(Elem a, Elem b) const;

  FieldKind kind_ = FieldKind::kRationals;
  std::uint32_t p_ = 0;
  std::uint32_t d_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// Polynomial text in x over GF(p), e.g. "x^2+2x+1". Used for moduli.
std::vector<std::uint32_t> parse_polynomial(std::string_view text, std::uint32_t p);
std::string format_polynomial(std::span<const std::uint32_t> coeffs);

bool is_prime(std::uint64_t n);
// Returns (p, d) with q = p^d, or (0, 0) when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

// A field element carrying its field. Arithmetic between elements of different
// fields throws FieldMismatch.
class Scalar {
 public:
  Scalar(FieldPtr field, FieldSpec::Elem code);
  Scalar(FieldPtr field, Rational value);

  static Scalar zero(const FieldPtr& field);
  static Scalar one(const FieldPtr& field);
  static Scalar from_int(const FieldPtr& field, long long value);
  static Scalar parse(const FieldPtr& field, std::string_view text);

  const FieldPtr& field() const { return field_; }
  FieldSpec::Elem code() const { return code_; }
  const Rational& rational() const { return value_; }
  bool is_zero() const;

  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  FieldPtr field_;
  FieldSpec::Elem code_ = 0;
  Rational value_;
};

// Rational text: "p/q" or an integer.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

}  // namespace matlink

#endif  // MATLINK_FIELD_HPP_
