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

#include "matlink/connectivity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

constexpr std::size_t kMaxBruteForce = 24;

// Calls fn(subset) for each k-subset of `items`, in lexicographic order of
// positions; stops early when fn returns true.
template <class Fn>
bool for_each_combination(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
  const std::size_t n = items.size();
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (auto i : idx) m |= bit(items[i]);
    if (fn(m)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

void check_terminals(const MinorView& m, Mask s, Mask t) {
  if ((s & t) != 0) throw Error(ErrorCode::kOverlap, "S and T intersect");
  if (((s | t) & ~m.ground()) != 0) {
    throw Error(ErrorCode::kUnknownLabel, "terminal sets leave the ground set");
  }
}

std::size_t kappa_bruteforce(const MinorView& m, Mask s, Mask t) {
  check_terminals(m, s, t);
  const Mask mid = m.ground() & ~s & ~t;
  if (popcount(mid) > kMaxBruteForce) {
    throw Error(ErrorCode::kTooLarge, "brute-force kappa limited to 24 free elements");
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Mask y = mid;; y = (y - 1) & mid) {
    best = std::min(best, m.lambda(s | y));
    if (y == 0) break;
  }
  return best;
}

std::size_t kappa_bruteforce(const RepMatroid& m, const ElementSet& s, const ElementSet& t) {
  return kappa_bruteforce(MinorView(m), m.mask_of(s), m.mask_of(t));
}

Mask max_common_independent(Mask ground, const RankOracle& r1, const RankOracle& r2) {
  const std::vector<std::size_t> elems = bits_of(ground);
  constexpr int kUnseen = -2;
  constexpr int kRoot = -1;
  Mask current = 0;
  std::size_t size = 0;
  while (true) {
    std::array<int, 64> parent;
    parent.fill(kUnseen);
    std::deque<std::size_t> queue;
    for (auto x : elems) {
      if ((current & bit(x)) == 0 && r1(current | bit(x)) == size + 1) {
        parent[x] = kRoot;
        queue.push_back(x);
      }
    }
    int sink = -1;
    while (!queue.empty() && sink < 0) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if ((current & bit(u)) == 0) {
        if (r2(current | bit(u)) == size + 1) {
          sink = static_cast<int>(u);
          break;
        }
        for (auto y : elems) {
          if ((current & bit(y)) == 0 || parent[y] != kUnseen) continue;
          if (r2((current & ~bit(y)) | bit(u)) == size) {
            parent[y] = static_cast<int>(u);
            queue.push_back(y);
          }
        }
      } else {
        for (auto x : elems) {
          if ((current & bit(x)) != 0 || parent[x] != kUnseen) continue;
          if (r1((current & ~bit(u)) | bit(x)) == size) {
            parent[x] = static_cast<int>(u);
            queue.push_back(x);
          }
        }
      }
    }
    if (sink < 0) return current;
    for (int v = sink; v != kRoot; v = parent[static_cast<std::size_t>(v)]) {
      current ^= bit(static_cast<std::size_t>(v));
    }
    ++size;
  }
}

std::size_t kappa_fast(const MinorView& m, Mask s, Mask t) {
  check_terminals(m, s, t);
  const Mask mid = m.ground() & ~s & ~t;
  const std::size_t rs = m.rank(s);
  const std::size_t rt = m.rank(t);
  const Mask common = max_common_independent(
      mid, [&](Mask y) { return m.rank(s | y) - rs; },
      [&](Mask y) { return m.rank(t | y) - rt; });
  return rs + rt + popcount(common) - m.rank();
}

std::size_t kappa_fast(const RepMatroid& m, const ElementSet& s, const ElementSet& t) {
  return kappa_fast(MinorView(m), m.mask_of(s), m.mask_of(t));
}

ElementSet matroid_intersection_max(const RepMatroid& m1, const RepMatroid& m2) {
  if (m1.size() != m2.size()) {
    throw Error(ErrorCode::kLabelMismatch, "matroids have different ground sets");
  }
  std::vector<std::size_t> to2(m1.size());
  for (std::size_t i = 0; i < m1.size(); ++i) {
    if (!m2.contains(m1.labels()[i])) {
      throw Error(ErrorCode::kLabelMismatch, "label '" + m1.labels()[i] + "' missing");
    }
    to2[i] = m2.index_of(m1.labels()[i]);
  }
  auto map2 = [&](Mask x) {
    Mask out = 0;
    for (auto i : bits_of(x)) out |= bit(to2[i]);
    return out;
  };
  const Mask common = max_common_independent(
      m1.ground(), [&](Mask y) { return m1.rank(y); },
      [&](Mask y) { return m2.rank(map2(y)); });
  return m1.set_of(common);
}

ElementFlags classify_element(const MinorView& m, Mask s, Mask t, std::size_t e,
                              std::size_t kappa) {
  if (((s | t) & bit(e)) != 0 || (m.ground() & bit(e)) == 0) {
    throw Error(ErrorCode::kBadElement, "element must lie outside S ∪ T");
  }
  ElementFlags flags;
  flags.deletable = kappa_fast(m.delete_element(e), s, t) == kappa;
  flags.contractible = kappa_fast(m.contract_element(e), s, t) == kappa;
  if (!flags.deletable && !flags.contractible) {
    internal_error("element neither deletable nor contractible");
  }
  return flags;
}

ElementClass classify_element(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                              const Label& e) {
  if (!m.contains(e)) throw Error(ErrorCode::kBadElement, "unknown element '" + e + "'");
  const MinorView view(m);
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const std::size_t k = kappa_fast(view, ms, mt);
  const ElementFlags f = classify_element(view, ms, mt, m.index_of(e), k);
  return ElementClass{e, f.deletable, f.contractible};
}

std::pair<Mask, Mask> linking_certificate_masks(const RepMatroid& m, Mask s, Mask t) {
  MinorView current(m);
  check_terminals(current, s, t);
  const std::size_t k = kappa_fast(current, s, t);
  Mask contract = 0;
  Mask remove = 0;
  for (auto e : bits_of(m.ground() & ~s & ~t)) {
    const MinorView without = current.delete_element(e);
    if (kappa_fast(without, s, t) == k) {
      remove |= bit(e);
      current = without;
      continue;
    }
    const MinorView contracted = current.contract_element(e);
    if (kappa_fast(contracted, s, t) != k) {
      internal_error("linking sweep lost connectivity at '" + m.labels()[e] + "'");
    }
    contract |= bit(e);
    current = contracted;
  }
  const auto normalized = normalize_minor_masks(m, contract, remove);
  const std::size_t achieved = MinorView(m, normalized.first, normalized.second).lambda(s);
  if (achieved != k) internal_error("linking certificate does not attain kappa");
  return normalized;
}

LinkingCertificate linking_certificate(const RepMatroid& m, const ElementSet& s,
                                       const ElementSet& t) {
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const auto [c, d] = linking_certificate_masks(m, ms, mt);
  return LinkingCertificate{m.set_of(c), m.set_of(d), MinorView(m, c, d).lambda(ms)};
}

std::pair<ElementSet, ElementSet> linked_subsets(const RepMatroid& m, const ElementSet& s,
                                                 const ElementSet& t) {
  const MinorView view(m);
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const std::size_t k = kappa_fast(view, ms, mt);
  if (k == 0) return {};
  const auto s_items = bits_of(ms);
  const auto t_items = bits_of(mt);
  std::pair<Mask, Mask> found{0, 0};
  const bool ok = for_each_combination(s_items, k, [&](Mask s1) {
    return for_each_combination(t_items, k, [&](Mask t1) {
      if (kappa_fast(view, s1, t1) != k) return false;
      found = {s1, t1};
      return true;
    });
  });
  if (!ok) internal_error("no linked subsets of the required size");
  return {m.set_of(found.first), m.set_of(found.second)};
}

}  // namespace matlink
