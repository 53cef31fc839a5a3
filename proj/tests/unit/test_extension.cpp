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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "matlink/errors.hpp"
#include "matlink/extension.hpp"
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

std::vector<std::uint32_t> codes(const std::vector<Scalar>& v) {
  std::vector<std::uint32_t> out;
  for (const auto& x : v) out.push_back(x.code());
  return out;
}

}  // namespace

TEST_CASE("projective points") {
  const auto gf2 = FieldSpec::gf(2);
  const auto one = pg_points(1, FieldSpec::gf(7));
  CHECK(one.cols() == 1);
  CHECK(one.code(0, 0) == 1);

  const auto line = pg_points(2, gf2);
  REQUIRE(line.cols() == 3);
  CHECK(line.codes() == std::vector<std::uint32_t>{1, 1, 0, 0, 1, 1});

  CHECK(pg_points(2, FieldSpec::gf(3)).cols() == 4);
  CHECK(pg_points(3, FieldSpec::gf(3)).cols() == 13);
  CHECK(pg_points(2, FieldSpec::gf(4)).cols() == 5);
  CHECK_THROWS_AS(pg_points(2, FieldSpec::rationals()), Error);

  // Pairwise non-parallel: every pair of columns has rank 2.
  const auto plane = pg_points(3, FieldSpec::gf(3));
  for (std::size_t i = 0; i < plane.cols(); ++i) {
    for (std::size_t j = i + 1; j < plane.cols(); ++j) {
      CHECK(plane.column_rank((Mask{1} << i) | (Mask{1} << j)) == 2);
    }
  }
}

TEST_CASE("guts bases") {
  CHECK(guts_basis(testing::two_blocks(), make_separation(testing::two_blocks(), set({"a1", "a2"}))).cols() == 0);
  const auto p = testing::parallel4();
  const auto b = guts_basis(p, make_separation(p, set({"s", "f1"})));
  REQUIRE(b.cols() == 1);
  CHECK(b.code(0, 0) == 1);
  const auto u = testing::u24();
  CHECK(guts_basis(u, make_separation(u, set({"a", "c"}))).cols() == 2);
}

TEST_CASE("guts extensions") {
  const auto blocks = testing::two_blocks();
  const auto none = extend_guts(blocks, make_separation(blocks, set({"a1", "a2"})), "x");
  CHECK(none.x.empty());
  CHECK(same_matroid(none.extended, blocks));

  const auto p = testing::parallel4();
  const auto ext = extend_guts(p, make_separation(p, set({"s", "f1"})), "x");
  CHECK(ext.x == std::vector<Label>{"x_0"});
  CHECK(closure(ext.extended, set({"s"})) == set({"s", "f1", "f2", "t", "x_0"}));

  const auto u = testing::u24();
  const auto plane = extend_guts(u, make_separation(u, set({"a", "c"})), "x");
  CHECK(plane.x.size() == 4);
  CHECK(plane.extended.rank() == 2);
  CHECK(rank_of(plane.extended, ElementSet(plane.x.begin(), plane.x.end())) == 2);
  CHECK(same_matroid(minor(plane.extended, ElementSet{}, ElementSet(plane.x.begin(), plane.x.end())), u));

  const auto clash = RepMatroid(p.matrix(), {"s", "x_0", "f2", "t"});
  CHECK_THROWS_AS(extend_guts(clash, make_separation(clash, set({"s", "x_0"})), "x"), Error);
  const auto q = RepMatroid(Matrix::from_ints(FieldSpec::rationals(), 1, 2, {1, 1}), {"a", "b"});
  CHECK_THROWS_AS(extend_guts(q, make_separation(q, set({"a"})), "x"), Error);
}

TEST_CASE("canonical guts labels, simple cases") {
  const auto p = testing::parallel4();
  const auto ext = extend_guts(p, make_separation(p, set({"s", "f1"})), "x");
  const auto labels = canonical_guts_labels(p, {}, ext);
  REQUIRE(labels.size() == 1);
  CHECK(codes(labels[0].coords) == std::vector<std::uint32_t>{1});

  const auto u = testing::u24();
  const auto plane = extend_guts(u, make_separation(u, set({"a", "c"})), "x");
  const auto pl = canonical_guts_labels(u, {}, plane);
  REQUIRE(pl.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(pl[j].coords == plane.points.column(j));

  // Contracting a point of the line kills the whole guts line mod <C>.
  CHECK_THROWS_AS(canonical_guts_labels(p, set({"f1"}), ext), Error);
}

TEST_CASE("extensions on random separations") {
  std::mt19937_64 rng(55);
  int shared_checks = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::uint32_t q = trial % 2 ? 3 : 2;
    const auto m = random_matroid(q, 2 + rng() % 3, 6 + rng() % 3, rng);
    const Mask s = 1;
    const Mask t = Mask{1} << (m.size() - 1);
    const MinorView view(m);
    const std::size_t k = kappa_fast(view, s, t);
    Mask f = 0;
    for (std::size_t e = 1; e + 1 < m.size(); ++e) {
      const auto flags = classify_element(view, s, t, e, k);
      if (!(flags.deletable && flags.contractible)) f |= Mask{1} << e;
    }
    const auto seq = nested_sequence_masks(m, s, t, f);
    const auto [c, d] = linking_certificate_masks(m, s, t);
    std::vector<std::vector<std::vector<std::uint32_t>>> images;
    for (const Mask a : seq.sets) {
      const auto ext = extend_guts(m, make_separation(m, m.set_of(a)), "x");
      const ElementSet xs(ext.x.begin(), ext.x.end());
      const std::size_t want = k == 0 ? 0 : (static_cast<std::size_t>(std::pow(q, k)) - 1) / (q - 1);
      CHECK(ext.x.size() == want);
      CHECK(same_matroid(minor(ext.extended, ElementSet{}, xs), m));
      const auto reduced = minor(ext.extended, m.set_of(c), m.set_of(d));
      CHECK(same_restriction(reduced, ext.extended, xs));
      if (k <= 3) {
        const RepMatroid reference(pg_points(k, m.field()), ext.x);
        CHECK(same_restriction(ext.extended, reference, xs));
      }
      const auto labels = canonical_guts_labels(m, m.set_of(c), ext);
      std::vector<std::vector<std::uint32_t>> image;
      for (std::size_t j = 0; j < labels.size(); ++j) {
        image.push_back(codes(labels[j].coords));
        // The scaled column maps onto its label exactly.
        std::vector<std::vector<Scalar>> scaled(1, ext.points.column(j));
        for (auto& v : scaled[0]) v = v * labels[j].scale;
        const auto again = canonical_guts_labels(
            m, m.set_of(c),
            PgExtension{m, ext.sep, {"y"}, Matrix::from_columns(m.field(), m.matrix().rows(), scaled),
                        ext.extended});
        CHECK(again[0].scale == Scalar::one(m.field()));
      }
      std::sort(image.begin(), image.end());
      images.push_back(std::move(image));
    }
    for (std::size_t i = 1; i < images.size(); ++i) {
      CHECK(images[i] == images[0]);
      ++shared_checks;
    }
  }
  CHECK(shared_checks > 20);
}

TEST_CASE("good extensions") {
  const auto u = testing::u24();
  const auto [same, e] = good_extension(u, set({"a"}), set({"a"}), "g");
  CHECK(e == "g");
  CHECK(closure(same, set({"a"})) == set({"a", "g"}));

  const auto [plane, g] = good_extension(u, set({"a", "c"}), set({"b", "d"}), "g");
  CHECK(plane.rank(Mask{1} << plane.index_of(g)) == 1);
  CHECK(same_matroid(minor(plane, ElementSet{}, set({"g"})), u));

  try {
    (void)good_extension(u, set({"a"}), set({"b"}), "g");
    FAIL("expected SkewFlats");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kSkewFlats);
  }
  CHECK_THROWS_AS(good_extension(u, set({"a"}), set({"a"}), "b"), Error);

  const auto q = RepMatroid(Matrix::from_ints(FieldSpec::rationals(), 2, 3, {1, 0, 1, 0, 1, 1}),
                            {"a", "b", "c"});
  const auto [qe, ql] = good_extension(q, set({"a", "b"}), set({"c"}), "g");
  CHECK(closure(qe, set({"c"})) == set({"c", "g"}));
}

}  // namespace matlink
