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

#include "matlink/matroid.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <utility>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

Mask low_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

template <class Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    fn(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

}  // namespace

// Full rank table, built once a matroid has answered enough queries to pay
// for it. Shared between copies since they carry the same matrix.
struct RepMatroid::RankCache {
  static constexpr std::size_t kMaxTabulated = 14;

  std::atomic<std::uint32_t> queries{0};
  std::atomic<bool> ready{false};
  std::once_flag once;
  std::vector<std::uint8_t> table;
};

RepMatroid::RepMatroid(Matrix matrix, std::vector<Label> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (labels_.size() != matrix_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(labels_.size()) + " labels for " +
                    std::to_string(matrix_.cols()) + " columns");
  }
  if (labels_.size() > kMaxElements) {
    throw Error(ErrorCode::kTooLarge, "matroids are limited to 64 elements");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw Error(ErrorCode::kSyntaxError, "empty label");
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(ErrorCode::kDuplicateLabel, "duplicate label '" + labels_[i] + "'");
    }
  }
  ground_ = low_mask(labels_.size());
  rank_ = matrix_.column_rank(ground_);
  cache_ = std::make_shared<RankCache>();
}

std::size_t RepMatroid::index_of(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownLabel, "unknown label '" + label + "'");
  }
  return it->second;
}

Mask RepMatroid::mask_of(const ElementSet& set) const {
  Mask m = 0;
  for (const auto& l : set) m |= bit(index_of(l));
  return m;
}

Mask RepMatroid::mask_of(std::span<const Label> labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

ElementSet RepMatroid::set_of(Mask mask) const {
  ElementSet out;
  for_each_bit(mask & ground_, [&](std::size_t i) { out.insert(labels_[i]); });
  return out;
}

std::vector<Label> RepMatroid::ordered(Mask mask) const {
  std::vector<Label> out;
  for_each_bit(mask & ground_, [&](std::size_t i) { out.push_back(labels_[i]); });
  return out;
}

std::size_t RepMatroid::rank(Mask x) const {
  const std::size_t n = labels_.size();
  if (n <= RankCache::kMaxTabulated) {
    RankCache& c = *cache_;
    if (c.ready.load(std::memory_order_acquire)) return c.table[x];
    const std::uint32_t threshold = static_cast<std::uint32_t>((bit(n) >> 3) + 16);
    if (c.queries.fetch_add(1, std::memory_order_relaxed) >= threshold) {
      std::call_once(c.once, [&] {
        c.table.resize(bit(n));
        for (Mask s = 0; s < bit(n); ++s) {
          c.table[s] = static_cast<std::uint8_t>(matrix_.column_rank(s));
        }
        c.ready.store(true, std::memory_order_release);
      });
      return c.table[x];
    }
  }
  return matrix_.column_rank(x);
}

std::size_t RepMatroid::corank(Mask x) const {
  return popcount(x) + rank(ground_ & ~x) - rank_;
}

std::size_t RepMatroid::lambda(Mask x) const {
  return rank(x) + rank(ground_ & ~x) - rank_;
}

Mask RepMatroid::closure(Mask x) const { return MinorView(*this).closure(x); }
Mask RepMatroid::coclosure(Mask x) const { return MinorView(*this).coclosure(x); }

MinorView::MinorView(const RepMatroid& m, Mask contract, Mask remove)
    : base_(&m), contract_(contract), ground_(m.ground() & ~contract & ~remove) {
  if ((contract & remove) != 0) {
    throw Error(ErrorCode::kOverlap, "contract and delete sets intersect");
  }
  if (((contract | remove) & ~m.ground()) != 0) {
    throw Error(ErrorCode::kUnknownLabel, "minor spec outside the ground set");
  }
  contract_rank_ = m.rank(contract);
}

std::size_t MinorView::corank(Mask x) const {
  return popcount(x) + rank(ground_ & ~x) - rank();
}

std::size_t MinorView::lambda(Mask x) const {
  return rank(x) + rank(ground_ & ~x) - rank();
}

Mask MinorView::closure(Mask x) const {
  const std::size_t rx = rank(x);
  Mask out = x;
  for_each_bit(ground_ & ~x, [&](std::size_t e) {
    if (rank(x | bit(e)) == rx) out |= bit(e);
  });
  return out;
}

Mask MinorView::coclosure(Mask x) const {
  const std::size_t rx = corank(x);
  Mask out = x;
  for_each_bit(ground_ & ~x, [&](std::size_t e) {
    if (corank(x | bit(e)) == rx) out |= bit(e);
  });
  return out;
}

MinorView MinorView::delete_element(std::size_t e) const {
  return MinorView(*base_, contract_, deleted() | bit(e));
}

MinorView MinorView::contract_element(std::size_t e) const {
  return MinorView(*base_, contract_ | bit(e), deleted());
}

Separation make_separation(const RepMatroid& m, const ElementSet& side_a) {
  return Separation{side_a, m.lambda(m.mask_of(side_a))};
}

void check_separation(const RepMatroid& m, const Separation& sep) {
  const std::size_t actual = m.lambda(m.mask_of(sep.side_a));
  if (actual != sep.order_minus_one) {
    throw Error(ErrorCode::kInvalidSpec,
                "separation records lambda " + std::to_string(sep.order_minus_one) +
                    " but its side has lambda " + std::to_string(actual));
  }
}

std::size_t rank_of(const RepMatroid& m, const ElementSet& x) {
  return m.rank(m.mask_of(x));
}

ElementSet closure(const RepMatroid& m, const ElementSet& x, bool dualize) {
  const Mask mx = m.mask_of(x);
  return m.set_of(dualize ? m.coclosure(mx) : m.closure(mx));
}

std::size_t lambda(const RepMatroid& m, const ElementSet& x) {
  return m.lambda(m.mask_of(x));
}

std::size_t localconn(const RepMatroid& m, const ElementSet& x, const ElementSet& y,
                      bool dualize) {
  const Mask mx = m.mask_of(x);
  const Mask my = m.mask_of(y);
  if (dualize) return m.corank(mx) + m.corank(my) - m.corank(mx | my);
  return m.rank(mx) + m.rank(my) - m.rank(mx | my);
}

RepMatroid minor(const RepMatroid& m, Mask contract, Mask remove) {
  if ((contract & remove) != 0) {
    throw Error(ErrorCode::kOverlap, "contract and delete sets intersect");
  }
  if (((contract | remove) & ~m.ground()) != 0) {
    throw Error(ErrorCode::kUnknownLabel, "minor spec outside the ground set");
  }
  std::vector<std::size_t> keep;
  for_each_bit(m.ground() & ~contract & ~remove, [&](std::size_t i) { keep.push_back(i); });
  std::vector<Label> labels;
  labels.reserve(keep.size());
  for (auto i : keep) labels.push_back(m.labels()[i]);
  if (contract == 0) return RepMatroid(m.matrix().select_columns(keep), std::move(labels));

  std::vector<std::size_t> pivots;
  for_each_bit(contract, [&](std::size_t i) { pivots.push_back(i); });
  const PivotResult pr = pivot_columns(m.matrix(), pivots);
  std::vector<bool> used(m.matrix().rows(), false);
  for (auto r : pr.pivot_rows) used[r] = true;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < used.size(); ++r) {
    if (!used[r]) rows.push_back(r);
  }
  return RepMatroid(pr.reduced.select_rows(rows).select_columns(keep), std::move(labels));
}

RepMatroid minor(const RepMatroid& m, const ElementSet& contract, const ElementSet& remove) {
  return minor(m, m.mask_of(contract), m.mask_of(remove));
}

RepMatroid minor(const RepMatroid& m, const MinorSpec& spec) {
  return minor(m, spec.contract, spec.remove);
}

RepMatroid dual(const RepMatroid& m) {
  const RrefResult r = rref_rank(m.matrix());
  const std::size_t n = m.size();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  // Standard form [I_r | A] -> [-A^T | I_{n-r}], columns kept in label order.
  Matrix d(m.field(), free_cols.size(), n);
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    d.set(t, free_cols[t], Scalar::one(m.field()));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      d.set(t, r.pivots[i], -r.reduced.at(i, free_cols[t]));
    }
  }
  return RepMatroid(std::move(d), m.labels());
}

namespace {

// Index of each label of `sub` inside `sup`, or throws LabelNotSubset.
std::vector<std::size_t> embed_labels(const RepMatroid& sup, const RepMatroid& sub) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (const auto& l : sub.labels()) {
    if (!sup.contains(l)) {
      throw Error(ErrorCode::kLabelNotSubset, "label '" + l + "' is not in the larger matroid");
    }
    out.push_back(sup.index_of(l));
  }
  return out;
}

Mask translate(Mask local, const std::vector<std::size_t>& positions) {
  Mask out = 0;
  for_each_bit(local, [&](std::size_t i) { out |= bit(positions[i]); });
  return out;
}

constexpr std::size_t kMaxMinorTarget = 12;
constexpr std::size_t kMaxMinorExtra = 26;

// Enumerates contract sets C over the view's elements outside E(N), in
// lexicographic assignment order, calling `on_hit(C)` for every C with
// (view / C)|E(N) = N. Stops when on_hit returns false.
template <class OnHit>
void search_minors(const MinorView& view, const RepMatroid& n, OnHit&& on_hit) {
  const RepMatroid& m = view.base();
  const std::vector<std::size_t> pos = embed_labels(m, n);
  const Mask target = translate(n.ground(), pos);
  if ((target & ~view.ground()) != 0) {
    throw Error(ErrorCode::kLabelNotSubset, "minor labels are not all present");
  }
  if (n.size() > kMaxMinorTarget) {
    throw Error(ErrorCode::kTooLarge, "labeled-minor test limited to 12 target elements");
  }
  std::vector<std::size_t> extra;
  for_each_bit(view.ground() & ~target, [&](std::size_t i) { extra.push_back(i); });
  if (extra.size() > kMaxMinorExtra) {
    throw Error(ErrorCode::kTooLarge, "too many elements outside the target minor");
  }
  // Subsets of E(N) checked full set first, then singletons, then the rest.
  std::vector<std::pair<Mask, std::size_t>> checks;
  const std::size_t nn = n.size();
  checks.emplace_back(target, n.rank());
  for (std::size_t i = 0; i < nn; ++i) checks.emplace_back(bit(pos[i]), n.rank(bit(i)));
  for (Mask s = 1; s + 1 < bit(nn); ++s) {
    if (popcount(s) >= 2) checks.emplace_back(translate(s, pos), n.rank(s));
  }
  const std::size_t count = extra.size();
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << count); ++v) {
    Mask c = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if ((v >> (count - 1 - i)) & 1u) c |= bit(extra[i]);
    }
    const std::size_t rc = view.rank(c);
    bool ok = true;
    for (const auto& [x, r] : checks) {
      if (view.rank(x | c) - rc != r) {
        ok = false;
        break;
      }
    }
    if (ok && !on_hit(c, view.ground() & ~target & ~c)) return;
  }
}

}  // namespace

bool same_matroid(const RepMatroid& a, const RepMatroid& b) {
  if (a.size() != b.size()) return false;
  for (const auto& l : a.labels()) {
    if (!b.contains(l)) return false;
  }
  return same_restriction(a, b, a.set_of(a.ground()));
}

bool same_restriction(const RepMatroid& a, const RepMatroid& b, const ElementSet& x) {
  const std::vector<Label> labels(x.begin(), x.end());
  if (labels.size() > 20) throw Error(ErrorCode::kTooLarge, "restriction too large to compare");
  std::vector<std::size_t> pa;
  std::vector<std::size_t> pb;
  for (const auto& l : labels) {
    pa.push_back(a.index_of(l));
    pb.push_back(b.index_of(l));
  }
  for (Mask s = 0; s < bit(labels.size()); ++s) {
    if (a.rank(translate(s, pa)) != b.rank(translate(s, pb))) return false;
  }
  return true;
}

std::optional<MinorSpec> find_minor_spec(const MinorView& view, const RepMatroid& n) {
  std::optional<MinorSpec> found;
  search_minors(view, n, [&](Mask c, Mask d) {
    found = MinorSpec{view.base().set_of(c), view.base().set_of(d)};
    return false;
  });
  return found;
}

std::optional<MinorSpec> is_labeled_minor(const RepMatroid& m, const RepMatroid& n) {
  return find_minor_spec(MinorView(m), n);
}

std::vector<MinorSpec> all_minor_specs(const RepMatroid& m, const RepMatroid& n,
                                       std::size_t limit) {
  std::vector<MinorSpec> out;
  if (limit == 0) return out;
  search_minors(MinorView(m), n, [&](Mask c, Mask d) {
    out.push_back(MinorSpec{m.set_of(c), m.set_of(d)});
    return out.size() < limit;
  });
  return out;
}

std::pair<Mask, Mask> normalize_minor_masks(const RepMatroid& m, Mask contract, Mask remove) {
  if ((contract & remove) != 0) {
    throw Error(ErrorCode::kInvalidSpec, "contract and delete sets intersect");
  }
  if (((contract | remove) & ~m.ground()) != 0) {
    throw Error(ErrorCode::kInvalidSpec, "minor spec outside the ground set");
  }
  Mask indep = 0;
  for_each_bit(contract, [&](std::size_t c) {
    if (m.rank(indep | bit(c)) == popcount(indep) + 1) indep |= bit(c);
  });
  // Dependent contractions are loops of M / indep, so deleting them is the same.
  const Mask pool = remove | (contract & ~indep);
  Mask coindep = 0;
  for_each_bit(pool, [&](std::size_t d) {
    if (m.rank(m.ground() & ~(coindep | bit(d))) == m.rank()) coindep |= bit(d);
  });
  // What is left of the pool are coloops of M \ coindep; contracting them is
  // the same as deleting them.
  return {indep | (pool & ~coindep), coindep};
}

MinorSpec normalize_minor_spec(const RepMatroid& m, const MinorSpec& spec) {
  for (const auto& l : spec.contract) {
    if (!m.contains(l)) throw Error(ErrorCode::kInvalidSpec, "unknown label '" + l + "'");
  }
  for (const auto& l : spec.remove) {
    if (!m.contains(l)) throw Error(ErrorCode::kInvalidSpec, "unknown label '" + l + "'");
  }
  const auto [c, d] = normalize_minor_masks(m, m.mask_of(spec.contract), m.mask_of(spec.remove));
  return MinorSpec{m.set_of(c), m.set_of(d)};
}

}  // namespace matlink
