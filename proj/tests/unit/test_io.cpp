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

#include <random>

#include "doctest.h"
#include "matlink/errors.hpp"
#include "matlink/io.hpp"

namespace matlink {
namespace {

ErrorCode code_of(std::string_view text) {
  try {
    (void)parse_matroid(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("parsing matroid files") {
  const auto one = parse_matroid("field gf(2)\nlabels e\nrows 1\n1\n");
  CHECK(one.size() == 1);
  CHECK(one.rank() == 1);

  const auto u24 = parse_matroid(
      "# uniform matroid U(2,4)\n"
      "field gf(3)\n"
      "labels a b c d   # four points on a line\n"
      "rows 2\n"
      "1 0 1 1\n"
      "\n"
      "0 1 1 2\n");
  CHECK(u24.rank() == 2);
  CHECK(u24.labels() == std::vector<Label>{"a", "b", "c", "d"});

  const auto gf9 = parse_matroid("field gf(9) modulus=x^2+1\nlabels p q\nrows 1\nx 2x+1\n");
  CHECK(gf9.field()->order() == 9);
  CHECK(gf9.matrix().at(0, 1).to_string() == "2x+1");

  const auto rat = parse_matroid("field rationals\nlabels p q r\nrows 2\n1 -1/2 3\n0 0 7/3\n");
  CHECK(rat.rank() == 2);

  const auto empty_rows = parse_matroid("field gf(5)\nlabels p q\nrows 0\n");
  CHECK(empty_rows.rank() == 0);
}

TEST_CASE("parse errors") {
  CHECK(code_of("field gf(2)\nlabels a a\nrows 1\n1 1\n") == ErrorCode::kDuplicateLabel);
  CHECK(code_of("field gf(6)\nlabels a\nrows 1\n1\n") == ErrorCode::kBadField);
  CHECK(code_of("field gf(4) modulus=x^2+1\nlabels a\nrows 1\n1\n") == ErrorCode::kBadField);
  CHECK(code_of("field gf(2)\nlabels a b\nrows 2\n1 1\n") == ErrorCode::kDimensionMismatch);
  CHECK(code_of("field gf(2)\nlabels a b\nrows 1\n1\n") == ErrorCode::kDimensionMismatch);
  CHECK(code_of("fields gf(2)\nlabels a\nrows 1\n1\n") == ErrorCode::kSyntaxError);
  try {
    (void)parse_matroid("field gf(3)\nlabels a b\nrows 1\n1 z\n");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSyntaxError);
    CHECK(std::string(e.what()).find("line 4, column 3") != std::string::npos);
  }
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(4);
  const std::vector<FieldPtr> fields{FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(4),
                                     FieldSpec::gf(8), FieldSpec::gf(9), FieldSpec::gf(25),
                                     FieldSpec::rationals()};
  for (const auto& f : fields) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t r = rng() % 4;
      const std::size_t n = 1 + rng() % 6;
      Matrix a(f, r, n);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (f->is_finite()) {
            a.set_code(i, j, static_cast<std::uint32_t>(rng() % f->order()));
          } else {
            const long long num = static_cast<long long>(rng() % 21) - 10;
            const long long den = 1 + static_cast<long long>(rng() % 5);
            a.set(i, j, Scalar(f, Rational(num, den)));
          }
        }
      }
      std::vector<Label> labels;
      for (std::size_t j = 0; j < n; ++j) labels.push_back("v" + std::to_string(j));
      const RepMatroid m(a, labels);
      const std::string text = serialize_matroid(m);
      const RepMatroid back = parse_matroid(text);
      CHECK(back.labels() == m.labels());
      CHECK(back.matrix() == m.matrix());
      CHECK(back.field()->describe() == m.field()->describe());
      CHECK(serialize_matroid(back) == text);
    }
  }
}

}  // namespace matlink
