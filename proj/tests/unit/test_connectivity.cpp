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
#include "matlink/connectivity.hpp"
#include "matlink/errors.hpp"
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

// Random disjoint S, T of sizes 1..3.
std::pair<Mask, Mask> random_terminals(const RepMatroid& m, std::mt19937_64& rng) {
  std::vector<std::size_t> order(m.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t ns = 1 + rng() % std::min<std::size_t>(3, m.size() / 2);
  const std::size_t nt = 1 + rng() % std::min<std::size_t>(3, m.size() / 2);
  Mask s = 0, t = 0;
  for (std::size_t i = 0; i < ns; ++i) s |= Mask{1} << order[i];
  for (std::size_t i = ns; i < ns + nt; ++i) t |= Mask{1} << order[i];
  return {s, t};
}

}  // namespace

TEST_CASE("kappa examples") {
  const auto u13 = testing::u13();
  CHECK(kappa_bruteforce(u13, set({"s"}), set({"t"})) == 1);
  CHECK(kappa_fast(u13, set({"s"}), set({"t"})) == 1);

  const auto blocks = testing::two_blocks();
  CHECK(kappa_bruteforce(blocks, set({"a1"}), set({"b1"})) == 0);
  CHECK(kappa_fast(blocks, set({"a1"}), set({"b1"})) == 0);

  const auto u24 = testing::u24();
  CHECK(kappa_fast(u24, set({"a", "b"}), set({"c", "d"})) == 2);
  CHECK(kappa_bruteforce(u24, set({"a", "b"}), set({"c", "d"})) == lambda(u24, set({"a", "b"})));

  const auto u25 = testing::make(3, 2, 5, {1, 0, 1, 1, 1, 0, 1, 1, 2, 0}, {"s", "a", "b", "c", "t"});
  CHECK(kappa_fast(u25, set({"s"}), set({"t"})) == 1);
  CHECK(kappa_bruteforce(u25, set({"s"}), set({"t"})) == 1);

  CHECK_THROWS_AS(kappa_fast(u24, set({"a"}), set({"a"})), Error);
}

TEST_CASE("brute force guard") {
  const auto f = FieldSpec::gf(2);
  std::vector<Label> labels;
  for (int i = 0; i < 27; ++i) labels.push_back("x" + std::to_string(i));
  const RepMatroid big(Matrix(f, 1, 27), labels);
  try {
    (void)kappa_bruteforce(big, set({"x0"}), set({"x1"}));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
  CHECK(kappa_fast(big, set({"x0"}), set({"x1"})) == 0);
}

TEST_CASE("matroid intersection") {
  const auto u24 = testing::u24();
  CHECK(matroid_intersection_max(u24, u24).size() == 2);

  const auto f = FieldSpec::gf(2);
  const RepMatroid free3(Matrix::identity(f, 3), {"p", "q", "r"});
  const RepMatroid zero3(Matrix(f, 1, 3), {"p", "q", "r"});
  CHECK(matroid_intersection_max(free3, zero3).empty());

  const auto u12 = testing::make(2, 1, 2, {1, 1}, {"x", "y"});
  CHECK(matroid_intersection_max(u12, u12).size() == 1);

  const RepMatroid other(Matrix::identity(f, 3), {"p", "q", "z"});
  CHECK_THROWS_AS(matroid_intersection_max(free3, other), Error);
}

TEST_CASE("classification") {
  const auto u24 = testing::u24();
  const auto c = classify_element(u24, set({"a"}), set({"b"}), "c");
  CHECK(c.deletable);
  CHECK(c.contractible);
  CHECK(c.flexible());

  const auto p = testing::parallel4();
  const auto f1 = classify_element(p, set({"s"}), set({"t"}), "f1");
  CHECK(f1.deletable);
  CHECK_FALSE(f1.contractible);

  const auto d = classify_element(dual(p), set({"s"}), set({"t"}), "f1");
  CHECK(d.contractible);
  CHECK_FALSE(d.deletable);

  CHECK_THROWS_AS(classify_element(p, set({"s"}), set({"t"}), "s"), Error);
}

TEST_CASE("linking certificates") {
  const auto u24 = testing::u24();
  const auto whole = linking_certificate(u24, set({"a", "b"}), set({"c", "d"}));
  CHECK(whole.contract.empty());
  CHECK(whole.remove.empty());
  CHECK(whole.achieved == 2);

  const auto u13 = linking_certificate(testing::u13(), set({"s"}), set({"t"}));
  CHECK(u13.contract.empty());
  CHECK(u13.remove == set({"m"}));
  CHECK(u13.achieved == 1);

  const auto p = linking_certificate(testing::parallel4(), set({"s"}), set({"t"}));
  CHECK(p.contract.empty());
  CHECK(p.remove == set({"f1", "f2"}));
  CHECK(p.achieved == 1);
}

TEST_CASE("linked subsets") {
  const auto blocks = testing::two_blocks();
  const auto none = linked_subsets(blocks, set({"a1"}), set({"b1"}));
  CHECK(none.first.empty());
  CHECK(none.second.empty());

  const auto u24 = linked_subsets(testing::u24(), set({"a", "b"}), set({"c", "d"}));
  CHECK(u24.first == set({"a", "b"}));
  CHECK(u24.second == set({"c", "d"}));

  const auto u13 = linked_subsets(testing::u13(), set({"s", "m"}), set({"t"}));
  CHECK(u13.first == set({"s"}));
  CHECK(u13.second == set({"t"}));
}

TEST_CASE("fast kappa against the span oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t q = trial % 2 ? 3 : 2;
    const auto m = random_matroid(q, 1 + rng() % 4, 3 + rng() % 5, rng);
    const auto [s, t] = random_terminals(m, rng);
    const MinorView view(m);
    const std::size_t k = kappa_fast(view, s, t);
    CHECK(k == testing::span_kappa(m, s, t));
    CHECK(k == kappa_bruteforce(view, s, t));
    const auto [c, d] = linking_certificate_masks(m, s, t);
    CHECK((c | d) == (m.ground() & ~s & ~t));
    CHECK((c & d) == 0);
    CHECK(m.rank(c) == std::popcount(c));
    CHECK(m.corank(d) == std::popcount(d));
    CHECK(MinorView(m, c, d).lambda(s) == k);
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (((s | t) >> e) & 1) continue;
      const auto flags = classify_element(view, s, t, e, k);
      const auto dual_flags = classify_element(MinorView(dual(m)), s, t, e, k);
      CHECK(flags.deletable == dual_flags.contractible);
      CHECK(flags.contractible == dual_flags.deletable);
      const std::size_t grown = kappa_fast(view, s | (Mask{1} << e), t);
      CHECK((grown == k || grown == k + 1));
      if (!(flags.deletable && flags.contractible)) CHECK(grown == k);
    }
  }
}

}  // namespace matlink
