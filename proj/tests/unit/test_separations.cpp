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
#include "matlink/separations.hpp"
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

// Intersection of every X with S ∪ e ⊆ X ⊆ E - T and lambda(X) = k.
std::optional<Mask> brute_min_separation(const RepMatroid& m, Mask s, Mask t, std::size_t e,
                                         std::size_t k) {
  const Mask base = s | (Mask{1} << e);
  const Mask free = m.ground() & ~base & ~t;
  Mask meet = m.ground();
  bool any = false;
  for (Mask y = free;; y = (y - 1) & free) {
    if (testing::span_lambda(m, base | y) == k) {
      meet &= base | y;
      any = true;
    }
    if (y == 0) break;
  }
  if (!any) return std::nullopt;
  return meet;
}

}  // namespace

TEST_CASE("minimal separations through an element") {
  const auto p = testing::parallel4();
  CHECK(min_separation_through(p, set({"s"}), set({"t"}), "f1").side_a == set({"s", "f1"}));
  CHECK(min_separation_through(p, set({"s"}), set({"t"}), "f2").side_a == set({"s", "f2"}));

  // c is flexible, yet lambda({a,c,d}) = 1 keeps a separation of order 2.
  const auto u24 = testing::u24();
  const auto sep = min_separation_through(u24, set({"a"}), set({"b"}), "c");
  CHECK(sep.side_a == set({"a", "c", "d"}));
  CHECK(sep.order_minus_one == 1);

  // s is a coloop so kappa({s}, {t}) = 0, but e is parallel to t.
  const auto g = testing::make(2, 2, 3, {1, 0, 0, 0, 1, 1}, {"s", "e", "t"});
  try {
    (void)min_separation_through(g, set({"s"}), set({"t"}), "e");
    FAIL("expected NoSuchSeparation");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNoSuchSeparation);
  }
}

TEST_CASE("nested sequence examples") {
  const auto p = testing::parallel4();
  CHECK(nested_sequence(p, set({"s"}), set({"t"}), {}).ordering.empty());

  const auto seq = nested_sequence(p, set({"s"}), set({"t"}), set({"f1", "f2"}));
  CHECK(seq.ordering == std::vector<Label>{"f1", "f2"});
  REQUIRE(seq.sets.size() == 2);
  CHECK(seq.sets[0] == set({"s", "f1"}));
  CHECK(seq.sets[1] == set({"s", "f1", "f2"}));
  CHECK(seq.kinds == std::vector<ClosureKind>{ClosureKind::kGuts, ClosureKind::kGuts});

  const auto dseq = nested_sequence(dual(p), set({"s"}), set({"t"}), set({"f1", "f2"}));
  CHECK(dseq.sets == seq.sets);
  CHECK(dseq.kinds == std::vector<ClosureKind>{ClosureKind::kCoguts, ClosureKind::kCoguts});

  try {
    (void)nested_sequence(testing::u24(), set({"a"}), set({"b"}), set({"c", "d"}));
    FAIL("expected FlexibleElementInF");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kFlexibleElementInF);
    CHECK(std::string(err.what()).find("c,d") != std::string::npos);
  }
  CHECK_THROWS_AS(nested_sequence(p, set({"s"}), set({"t"}), set({"s"})), Error);
}

TEST_CASE("excising the middle") {
  const auto p = testing::parallel4();
  const auto s = set({"s"});
  const auto t = set({"t"});
  const auto seq = nested_sequence(p, s, t, set({"f1", "f2"}));
  const auto cert = linking_certificate(p, s, t);
  const auto out = excise_middle(p, s, t, seq, cert, 1, 2);
  CHECK(out.labels() == std::vector<Label>{"s", "f1", "t"});
  CHECK(lambda(out, set({"s", "f1"})) == 1);
  CHECK_THROWS_AS(excise_middle(p, s, t, seq, cert, 2, 2), Error);
  CHECK_THROWS_AS(excise_middle(p, s, t, seq, cert, 0, 1), Error);
}

TEST_CASE("random nested sequences") {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t q = trial % 2 ? 3 : 2;
    const auto m = random_matroid(q, 2 + rng() % 3, 5 + rng() % 4, rng);
    const Mask s = 1;
    const Mask t = Mask{1} << (m.size() - 1);
    const MinorView view(m);
    const std::size_t k = kappa_fast(view, s, t);
    Mask f = 0;
    for (std::size_t e = 1; e + 1 < m.size(); ++e) {
      const auto flags = classify_element(view, s, t, e, k);
      const bool flexible = flags.deletable && flags.contractible;
      if (!flexible) {
        f |= Mask{1} << e;
        const auto brute = brute_min_separation(m, s, t, e, k);
        REQUIRE(brute.has_value());
        CHECK(min_separation_mask(view, s, t, e, k) == *brute);
      }
      // Non-contractibility survives growing S to any separating set.
      if (!flags.contractible) {
        const Mask u = min_separation_mask(view, s, t, e, k);
        for (std::size_t g = 1; g + 1 < m.size(); ++g) {
          if ((u >> g) & 1) continue;
          const auto before = classify_element(view, s, t, g, k);
          if (before.contractible) continue;
          CHECK_FALSE(classify_element(view, u, t, g, k).contractible);
        }
      }
    }
    const auto seq = nested_sequence_masks(m, s, t, f);
    const auto problems = verify_nested(m, s, t, f, seq);
    CHECK(problems.empty());
    if (seq.sets.size() >= 2) {
      const auto cert = linking_certificate(m, m.set_of(s), m.set_of(t));
      const auto labels = to_labels(m, seq);
      const auto out = excise_middle(m, m.set_of(s), m.set_of(t), labels, cert, 1,
                                     seq.sets.size());
      CHECK(kappa_fast(out, m.set_of(s), m.set_of(t)) == k);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

}  // namespace matlink
