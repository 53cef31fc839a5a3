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
#include "matlink/matroid.hpp"
#include "support/fixtures.hpp"

namespace matlink {
namespace {

using testing::set;

RepMatroid random_matroid(std::uint32_t q, std::size_t r, std::size_t n, std::mt19937_64& rng) {
  const auto f = FieldSpec::gf(q);
  Matrix a(f, r, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.set_code(i, j, static_cast<std::uint32_t>(rng() % q));
  }
  std::vector<Label> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
  return RepMatroid(a, labels);
}

}  // namespace

TEST_CASE("rank and closure") {
  const auto m = testing::u24();
  CHECK(rank_of(m, {}) == 0);
  CHECK(rank_of(m, set({"a", "b", "c"})) == 2);
  CHECK(rank_of(m, m.set_of(m.ground())) == m.rank());
  CHECK(closure(m, set({"a"})) == set({"a"}));
  CHECK(closure(m, m.set_of(m.ground())) == m.set_of(m.ground()));
  CHECK(closure(testing::parallel4(), set({"s"})) == set({"s", "f1", "f2", "t"}));
  CHECK_THROWS_AS(rank_of(m, set({"z"})), Error);
}

TEST_CASE("construction errors") {
  const auto f = FieldSpec::gf(2);
  try {
    RepMatroid(Matrix::identity(f, 2), {"a", "a"});
    FAIL("expected DuplicateLabel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateLabel);
  }
  CHECK_THROWS_AS(RepMatroid(Matrix::identity(f, 2), {"a"}), Error);
}

TEST_CASE("minors") {
  const auto m = testing::u24();
  const auto same = minor(m, ElementSet{}, ElementSet{});
  CHECK(same_matroid(same, m));

  const auto c = minor(m, set({"a"}), {});
  CHECK(c.labels() == std::vector<Label>{"b", "c", "d"});
  CHECK(c.rank() == 1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(c.rank(Mask{1} << j) == 1);

  const auto d = minor(m, {}, set({"d"}));
  CHECK(d.labels() == std::vector<Label>{"a", "b", "c"});
  CHECK(d.rank() == 2);
  CHECK(d.rank(0b011) == 2);

  CHECK_THROWS_AS(minor(m, set({"a"}), set({"a"})), Error);
}

TEST_CASE("duality") {
  const auto u12 = testing::make(2, 1, 2, {1, 1}, {"x", "y"});
  CHECK(same_matroid(dual(u12), u12));
  CHECK(dual(testing::u24()).rank() == 2);
  const auto free3 = RepMatroid(Matrix::identity(FieldSpec::gf(5), 3), {"p", "q", "r"});
  const auto d = dual(free3);
  CHECK(d.rank() == 0);
  CHECK(d.labels() == free3.labels());
}

TEST_CASE("lambda and local connectivity") {
  const auto m = testing::u24();
  CHECK(lambda(m, {}) == 0);
  CHECK(lambda(m, set({"a", "b"})) == 2);
  CHECK(lambda(testing::two_blocks(), set({"a1", "a2"})) == 0);
  CHECK(localconn(m, set({"a", "c"}), set({"a", "c"})) == 2);
  CHECK(localconn(m, set({"a"}), set({"b"})) == 0);
  CHECK(localconn(testing::parallel4(), set({"s"}), set({"t"})) == 1);
}

TEST_CASE("labeled minors") {
  const auto m = testing::u24();
  const auto self = is_labeled_minor(m, m);
  REQUIRE(self.has_value());
  CHECK(self->contract.empty());
  CHECK(self->remove.empty());

  const auto n = testing::make(3, 1, 3, {1, 1, 1}, {"b", "c", "d"});
  const auto spec = is_labeled_minor(m, n);
  REQUIRE(spec.has_value());
  CHECK(spec->contract == set({"a"}));
  CHECK(spec->remove.empty());

  const auto loop = testing::make(3, 2, 3, {1, 0, 0, 0, 1, 0}, {"a", "b", "c"});
  CHECK_FALSE(is_labeled_minor(m, loop).has_value());

  const auto stranger = testing::make(3, 1, 1, {1}, {"z"});
  CHECK_THROWS_AS(is_labeled_minor(m, stranger), Error);
}

TEST_CASE("normalizing minor specs") {
  const auto m = testing::u13();
  const MinorSpec spec{set({"s", "m"}), {}};
  const auto out = normalize_minor_spec(m, spec);
  CHECK(out.contract == set({"s"}));
  CHECK(out.remove == set({"m"}));
  CHECK(same_matroid(minor(m, out), minor(m, spec)));

  const auto u23 = testing::make(3, 2, 3, {1, 0, 1, 0, 1, 1}, {"a", "b", "c"});
  const MinorSpec keep{{}, set({"a"})};
  CHECK(normalize_minor_spec(u23, keep) == keep);
}

TEST_CASE("rank agrees with span counting") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t q = trial % 2 ? 3 : 2;
    const auto m = random_matroid(q, 1 + rng() % 3, 2 + rng() % 4, rng);
    for (Mask x = 0; x <= m.ground(); ++x) CHECK(m.rank(x) == testing::span_rank(m, x));
  }
}

TEST_CASE("closure duality, submodularity and minor monotonicity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t q = trial % 2 ? 3 : 2;
    const auto m = random_matroid(q, 1 + rng() % 3, 3 + rng() % 4, rng);
    const auto d = dual(m);
    const Mask e = m.ground();
    for (Mask x = 0; x <= e; ++x) {
      CHECK(d.lambda(x) == m.lambda(x));
      for (std::size_t i = 0; i < m.size(); ++i) {
        const Mask b = Mask{1} << i;
        if (x & b) continue;
        const Mask other = e & ~x & ~b;
        CHECK(((m.closure(x) & b) != 0) == ((m.coclosure(other) & b) == 0));
      }
      for (Mask y = 0; y <= e; y += 3) {
        CHECK(m.lambda(x) + m.lambda(y) >= m.lambda(x & y) + m.lambda(x | y));
      }
    }
    const Mask c1 = 1;
    const Mask d1 = 2;
    const auto view = MinorView(m, c1, d1);
    for (Mask x = 0; x <= e; ++x) {
      if (x & (c1 | d1)) continue;
      CHECK(view.lambda(x) <= m.lambda(x));
    }
  }
}

TEST_CASE("minor commutation") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = random_matroid(3, 3, 6, rng);
    const auto once = minor(m, set({"e0"}), set({"e1"}));
    const auto twice = minor(once, set({"e2"}), set({"e3"}));
    const auto direct = minor(m, set({"e0", "e2"}), set({"e1", "e3"}));
    CHECK(same_matroid(twice, direct));
    CHECK(same_matroid(dual(dual(m)), m));
  }
}

}  // namespace matlink
