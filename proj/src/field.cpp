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

#include "matlink/field.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m, coefficients mod p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = (lead * m[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly decode(std::uint32_t code, std::uint32_t p, std::uint32_t d) {
  Poly c(d, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p, std::uint32_t d) {
  std::uint64_t code = 0;
  for (std::uint32_t i = d; i-- > 0;) {
    code = code * p + (i < c.size() ? c[i] : 0);
  }
  return static_cast<std::uint32_t>(code);
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t d = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t e = 1; e <= d / 2; ++e) {
    const std::uint64_t count = ipow(p, e);
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = decode(static_cast<std::uint32_t>(low), p, e);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

[[noreturn]] void syntax(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kSyntaxError,
              "cannot parse '" + std::string(text) + "': " + why);
}

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint32_t d = 0;
  while (q % p == 0) {
    q /= p;
    ++d;
  }
  if (q != 1 || p > 0xffffffffu) return {0, 0};
  return {static_cast<std::uint32_t>(p), d};
}

std::vector<std::uint32_t> parse_polynomial(std::string_view text,
                                            std::uint32_t p) {
  const std::string s = strip(text);
  if (s.empty()) syntax(text, "empty polynomial");
  Poly coeffs;
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      syntax(text, "expected '+' or '-'");
    }
    std::uint64_t coef = 1;
    bool has_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coef = (coef * 10 + static_cast<std::uint64_t>(s[i] - '0')) % p;
        ++i;
      }
      has_coef = true;
    }
    std::uint32_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!has_coef) syntax(text, "dangling '*'");
      ++i;
      if (i >= s.size() || s[i] != 'x') syntax(text, "expected 'x' after '*'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
          syntax(text, "expected exponent");
        }
        power = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          power = power * 10 + static_cast<std::uint32_t>(s[i] - '0');
          if (power > 1024) syntax(text, "exponent too large");
          ++i;
        }
      }
    } else if (!has_coef) {
      syntax(text, "expected a term");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    const std::uint64_t term = negative ? (p - coef % p) % p : coef % p;
    coeffs[power] = static_cast<std::uint32_t>((coeffs[power] + term) % p);
  }
  trim(coeffs);
  return coeffs;
}

std::string format_polynomial(std::span<const std::uint32_t> coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::uint32_t c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldPtr FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p) || p > kMaxOrder) {
    throw Error(ErrorCode::kBadField,
                "gf(" + std::to_string(p) + ") needs a prime below 2^16");
  }
  std::shared_ptr<FieldSpec> f(new FieldSpec());
  f->kind_ = FieldKind::kPrime;
  f->p_ = p;
  f->d_ = 1;
  f->q_ = p;
  f->build_tables();
  return f;
}

FieldPtr FieldSpec::extension(std::uint32_t p,
                              std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::kBadField,
                "characteristic " + std::to_string(p) + " is not prime");
  }
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 2) {
    throw Error(ErrorCode::kBadField, "modulus must have positive degree");
  }
  if (modulus.back() != 1) {
    throw Error(ErrorCode::kBadField,
                "modulus " + format_polynomial(modulus) + " is not monic");
  }
  const auto d = static_cast<std::uint32_t>(modulus.size() - 1);
  if (d == 1) return prime(p);
  const std::uint64_t q = ipow(p, d);
  if (q > kMaxOrder) {
    throw Error(ErrorCode::kBadField, "field order exceeds 2^16");
  }
  if (!is_irreducible(modulus, p)) {
    throw Error(ErrorCode::kBadField,
                "modulus " + format_polynomial(modulus) +
                    " is reducible over gf(" + std::to_string(p) + ")");
  }
  std::shared_ptr<FieldSpec> f(new FieldSpec());
  f->kind_ = FieldKind::kExtension;
  f->p_ = p;
  f->d_ = d;
  f->q_ = static_cast<std::uint32_t>(q);
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

FieldPtr FieldSpec::rationals() {
  static const FieldPtr q = [] {
    std::shared_ptr<FieldSpec> f(new FieldSpec());
    f->kind_ = FieldKind::kRationals;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr FieldSpec::gf(std::uint32_t q) {
  const auto [p, d] = prime_power(q);
  if (p == 0) {
    throw Error(ErrorCode::kBadField, std::to_string(q) + " is not a prime power");
  }
  if (d == 1) return prime(p);
  switch (q) {
    case 4: return extension(2, {1, 1, 1});
    case 8: return extension(2, {1, 1, 0, 1});
    case 9: return extension(3, {1, 0, 1});
    default: break;
  }
  if (q > kMaxOrder) throw Error(ErrorCode::kBadField, "field order exceeds 2^16");
  for (std::uint32_t low = 0; low < q; ++low) {
    Poly f = decode(low, p, d);
    f.push_back(1);
    if (is_irreducible(f, p)) return extension(p, f);
  }
  internal_error("no irreducible polynomial found");
}

std::string FieldSpec::describe() const {
  switch (kind_) {
    case FieldKind::kRationals: return "rationals";
    case FieldKind::kPrime: return "gf(" + std::to_string(q_) + ")";
    case FieldKind::kExtension:
      return "gf(" + std::to_string(q_) + ") modulus=" + format_polynomial(modulus_);
  }
  return {};
}

bool FieldSpec::operator==(const FieldSpec& other) const {
  return kind_ == other.kind_ && p_ == other.p_ && d_ == other.d_ &&
         modulus_ == other.modulus_;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

FieldSpec::Elem FieldSpec::slow_mul(Elem a, Elem b) const {
  if (kind_ == FieldKind::kPrime) {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  const Poly x = decode(a, p_, d_);
  const Poly y = decode(b, p_, d_);
  Poly prod(2 * d_, 0);
  for (std::uint32_t i = 0; i < d_; ++i) {
    for (std::uint32_t j = 0; j < d_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p_);
    }
  }
  return encode(poly_mod(std::move(prod), modulus_, p_), p_, d_);
}

void FieldSpec::build_tables() {
  const std::uint32_t units = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(units) + 1, 0);
  log_.assign(q_, 0);
  bool found = false;
  for (Elem g = (q_ == 2 ? 1 : 2); g < q_ && !found; ++g) {
    Elem x = 1;
    std::uint32_t i = 0;
    for (; i < units; ++i) {
      exp_[i] = x;
      x = slow_mul(x, g);
      if (x == 1) {
        ++i;
        break;
      }
    }
    found = (i == units && x == 1);
  }
  if (!found) internal_error("no primitive element in " + describe());
  for (std::uint32_t i = 0; i < units; ++i) {
    exp_[i + units] = exp_[i];
    log_[exp_[i]] = i;
  }
  if (kind_ == FieldKind::kExtension && p_ != 2) {
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      Poly c = decode(a, p_, d_);
      for (auto& v : c) v = (p_ - v) % p_;
      neg_table_[a] = encode(c, p_, d_);
    }
    if (q_ <= 256) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elem a = 0; a < q_; ++a) {
        const Poly x = decode(a, p_, d_);
        for (Elem b = 0; b < q_; ++b) {
          Poly y = decode(b, p_, d_);
          for (std::uint32_t i = 0; i < d_; ++i) y[i] = (x[i] + y[i]) % p_;
          add_table_[static_cast<std::size_t>(a) * q_ + b] = encode(y, p_, d_);
        }
      }
    }
  }
}

FieldSpec::Elem FieldSpec::add(Elem a, Elem b) const {
  if (kind_ == FieldKind::kPrime) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem out = 0;
  Elem scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FieldSpec::Elem FieldSpec::neg(Elem a) const {
  if (kind_ == FieldKind::kPrime) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  return neg_table_[a];
}

FieldSpec::Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  const std::uint32_t units = q_ - 1;
  return exp_[(units - log_[a]) % units];
}

FieldSpec::Elem FieldSpec::from_int(long long value) const {
  long long r = value % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> FieldSpec::coefficients(Elem a) const {
  return decode(a, p_, d_);
}

FieldSpec::Elem FieldSpec::from_coefficients(
    std::span<const std::uint32_t> coeffs) const {
  Poly c(coeffs.begin(), coeffs.end());
  for (auto& v : c) v %= p_;
  if (kind_ == FieldKind::kExtension) c = poly_mod(std::move(c), modulus_, p_);
  else if (c.size() > 1) c.resize(1);
  return encode(c, p_, d_);
}

std::string FieldSpec::format(Elem a) const {
  if (kind_ == FieldKind::kPrime) return std::to_string(a);
  return format_polynomial(decode(a, p_, d_));
}

FieldSpec::Elem FieldSpec::parse(std::string_view text) const {
  const std::string s = strip(text);
  if (kind_ == FieldKind::kPrime) {
    if (s.empty()) syntax(text, "empty entry");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) syntax(text, "expected digits");
    long long r = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        syntax(text, "expected a decimal integer");
      }
      r = (r * 10 + (s[i] - '0')) % p_;
    }
    return from_int(s[0] == '-' ? -r : r);
  }
  return from_coefficients(parse_polynomial(s, p_));
}

Rational parse_rational(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) syntax(text, "expected digits");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(part[j]))) {
        syntax(text, "expected an integer or fraction");
      }
    }
    BigInt v(part.substr(i));
    return (part[0] == '-') ? BigInt(-v) : v;
  };
  if (slash == std::string::npos) return Rational(parse_int(s, true));
  const BigInt num = parse_int(s.substr(0, slash), true);
  const BigInt den = parse_int(s.substr(slash + 1), false);
  if (den == 0) syntax(text, "zero denominator");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Scalar::Scalar(FieldPtr field, FieldSpec::Elem code)
    : field_(std::move(field)), code_(code) {
  if (!field_->is_finite()) {
    value_ = Rational(static_cast<long long>(code));
    code_ = 0;
  } else if (code_ >= field_->order()) {
    throw Error(ErrorCode::kFieldMismatch, "element code outside the field");
  }
}

Scalar::Scalar(FieldPtr field, Rational value)
    : field_(std::move(field)), value_(std::move(value)) {
  if (field_->is_finite()) {
    throw Error(ErrorCode::kFieldMismatch, "rational value in a finite field");
  }
}

Scalar Scalar::zero(const FieldPtr& field) { return from_int(field, 0); }
Scalar Scalar::one(const FieldPtr& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const FieldPtr& field, long long value) {
  if (!field->is_finite()) return Scalar(field, Rational(value));
  return Scalar(field, field->from_int(value));
}

Scalar Scalar::parse(const FieldPtr& field, std::string_view text) {
  if (!field->is_finite()) return Scalar(field, parse_rational(text));
  return Scalar(field, field->parse(text));
}

bool Scalar::is_zero() const {
  return field_->is_finite() ? code_ == 0 : value_ == 0;
}

std::string Scalar::to_string() const {
  return field_->is_finite() ? field_->format(code_) : format_rational(value_);
}

namespace {
void require_same(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field(), b.field())) {
    throw Error(ErrorCode::kFieldMismatch, "scalars from " + a.field()->describe() +
                                               " and " + b.field()->describe());
  }
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (!a.field_->is_finite()) return Scalar(a.field_, Rational(a.value_ + b.value_));
  return Scalar(a.field_, a.field_->add(a.code_, b.code_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (!a.field_->is_finite()) return Scalar(a.field_, Rational(a.value_ - b.value_));
  return Scalar(a.field_, a.field_->sub(a.code_, b.code_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (!a.field_->is_finite()) return Scalar(a.field_, Rational(a.value_ * b.value_));
  return Scalar(a.field_, a.field_->mul(a.code_, b.code_));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  if (!a.field_->is_finite()) return Scalar(a.field_, Rational(a.value_ / b.value_));
  return Scalar(a.field_, a.field_->div(a.code_, b.code_));
}

Scalar Scalar::operator-() const {
  if (!field_->is_finite()) return Scalar(field_, Rational(-value_));
  return Scalar(field_, field_->neg(code_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field_, b.field_)) return false;
  return a.field_->is_finite() ? a.code_ == b.code_ : a.value_ == b.value_;
}

}  // namespace matlink
