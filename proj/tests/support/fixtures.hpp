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

// Small matroids used across the tests, and an independent rank oracle that
// counts the vectors in a column span instead of eliminating.

#ifndef MATLINK_TESTS_SUPPORT_FIXTURES_HPP_
#define MATLINK_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "matlink/matroid.hpp"

namespace matlink::testing {

inline RepMatroid make(std::uint32_t q, std::size_t rows, std::size_t cols,
                       std::initializer_list<long long> values, std::vector<Label> labels) {
  return RepMatroid(Matrix::from_ints(FieldSpec::gf(q), rows, cols, values), std::move(labels));
}

// U_{2,4} over GF(3) on a,b,c,d.
inline RepMatroid u24() { return make(3, 2, 4, {1, 0, 1, 1, 0, 1, 1, 2}, {"a", "b", "c", "d"}); }

// Rank 1, four parallel elements s,f1,f2,t over GF(2).
inline RepMatroid parallel4() { return make(2, 1, 4, {1, 1, 1, 1}, {"s", "f1", "f2", "t"}); }

// U_{1,3} on s,m,t over GF(2).
inline RepMatroid u13() { return make(2, 1, 3, {1, 1, 1}, {"s", "m", "t"}); }

// U_{1,2} ⊕ U_{1,2} over GF(2) on a1,a2 | b1,b2.
inline RepMatroid two_blocks() {
  return make(2, 2, 4, {1, 1, 0, 0, 0, 0, 1, 1}, {"a1", "a2", "b1", "b2"});
}

inline ElementSet set(std::initializer_list<const char*> xs) {
  ElementSet out;
  for (auto x : xs) out.insert(x);
  return out;
}

// Rank of a set of columns over a finite field: log_q of the number of
// vectors in their span, found by closing {0} under adding column multiples.
inline std::size_t span_rank(const RepMatroid& m, Mask x) {
  const auto& f = *m.field();
  const Matrix& a = m.matrix();
  const std::size_t r = a.rows();
  std::set<std::vector<std::uint32_t>> span{std::vector<std::uint32_t>(r, 0)};
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (((x >> j) & 1) == 0) continue;
    std::set<std::vector<std::uint32_t>> next;
    for (const auto& v : span) {
      for (std::uint32_t c = 0; c < f.order(); ++c) {
        auto w = v;
        for (std::size_t i = 0; i < r; ++i) w[i] = f.add(w[i], f.mul(c, a.code(i, j)));
        next.insert(std::move(w));
      }
    }
    span = std::move(next);
  }
  std::size_t k = 0;
  for (std::size_t size = 1; size < span.size(); size *= f.order()) ++k;
  return k;
}

inline std::size_t span_lambda(const RepMatroid& m, Mask x) {
  return span_rank(m, x) + span_rank(m, m.ground() & ~x) - span_rank(m, m.ground());
}

// kappa from the definition, with the independent rank oracle.
inline std::size_t span_kappa(const RepMatroid& m, Mask s, Mask t) {
  const Mask mid = m.ground() & ~s & ~t;
  std::size_t best = 1000;
  for (Mask y = mid;; y = (y - 1) & mid) {
    best = std::min(best, span_lambda(m, s | y));
    if (y == 0) break;
  }
  return best;
}

}  // namespace matlink::testing

#endif  // MATLINK_TESTS_SUPPORT_FIXTURES_HPP_
