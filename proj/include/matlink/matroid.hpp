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

#ifndef MATLINK_MATROID_HPP_
#define MATLINK_MATROID_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "matlink/matrix.hpp"

namespace matlink {

using Label = std::string;
using ElementSet = std::set<Label>;

// The matroid M[D] of the columns of a matrix D, with one label per column.
//
// Element order is the column order. Every "label order" scan and every
// lexicographic tie-break in this library follows it. Internally, subsets of
// the ground set are bitmasks over column indices, so matroids have at most
// 64 elements.
class RepMatroid {
 public:
  static constexpr std::size_t kMaxElements = 64;

  RepMatroid(Matrix matrix, std::vector<Label> labels);

  const Matrix& matrix() const { return matrix_; }
  const FieldPtr& field() const { return matrix_.field(); }
  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t rank() const { return rank_; }
  Mask ground() const { return ground_; }

  bool contains(const Label& label) const { return index_.count(label) != 0; }
  std::size_t index_of(const Label& label) const;
  Mask mask_of(const ElementSet& set) const;
  Mask mask_of(std::span<const Label> labels) const;
  ElementSet set_of(Mask mask) const;
  std::vector<Label> ordered(Mask mask) const;

  std::size_t rank(Mask x) const;
  // Rank in the dual matroid: |X| + r(E - X) - r(E).
  std::size_t corank(Mask x) const;
  std::size_t lambda(Mask x) const;
  Mask closure(Mask x) const;
  Mask coclosure(Mask x) const;

 private:
  struct RankCache;

  Matrix matrix_;
  std::vector<Label> labels_;
  std::unordered_map<Label, std::size_t> index_;
  Mask ground_ = 0;
  std::size_t rank_ = 0;
  std::shared_ptr<RankCache> cache_;
};

// M / C \ D viewed through the rank function of M. Cheap to copy; the base
// matroid must outlive the view.
class MinorView {
 public:
  explicit MinorView(const RepMatroid& m) : MinorView(m, 0, 0) {}
  MinorView(const RepMatroid& m, Mask contract, Mask remove);

  const RepMatroid& base() const { return *base_; }
  Mask ground() const { return ground_; }
  Mask contracted() const { return contract_; }
  Mask deleted() const { return base_->ground() & ~ground_ & ~contract_; }

  std::size_t rank(Mask x) const { return base_->rank(x | contract_) - contract_rank_; }
  std::size_t rank() const { return rank(ground_); }
  std::size_t corank(Mask x) const;
  std::size_t lambda(Mask x) const;
  Mask closure(Mask x) const;
  Mask coclosure(Mask x) const;

  MinorView delete_element(std::size_t e) const;
  MinorView contract_element(std::size_t e) const;

 private:
  const RepMatroid* base_;
  Mask contract_;
  Mask ground_;
  std::size_t contract_rank_;
};

// Contract/delete sets describing M / C \ D.
struct MinorSpec {
  ElementSet contract;
  ElementSet remove;

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
};

// A partition (A, E - A) together with lambda(A).
struct Separation {
  ElementSet side_a;
  std::size_t order_minus_one = 0;
};

Separation make_separation(const RepMatroid& m, const ElementSet& side_a);
// Throws InvalidSpec unless sep.order_minus_one equals lambda of its side.
void check_separation(const RepMatroid& m, const Separation& sep);

std::size_t rank_of(const RepMatroid& m, const ElementSet& x);
ElementSet closure(const RepMatroid& m, const ElementSet& x, bool dualize = false);
std::size_t lambda(const RepMatroid& m, const ElementSet& x);
std::size_t localconn(const RepMatroid& m, const ElementSet& x, const ElementSet& y,
                      bool dualize = false);

RepMatroid minor(const RepMatroid& m, const ElementSet& contract, const ElementSet& remove);
RepMatroid minor(const RepMatroid& m, Mask contract, Mask remove);
RepMatroid minor(const RepMatroid& m, const MinorSpec& spec);
RepMatroid dual(const RepMatroid& m);

// Rank-function equality on identical label sets (exhaustive, <= 20 elements).
bool same_matroid(const RepMatroid& a, const RepMatroid& b);
// a|X == b|X as rank functions.
bool same_restriction(const RepMatroid& a, const RepMatroid& b, const ElementSet& x);

// First (C, D) in lexicographic assignment order (delete before contract,
// earlier elements most significant) with M / C \ D equal to N as labeled
// matroids, or nullopt.
std::optional<MinorSpec> is_labeled_minor(const RepMatroid& m, const RepMatroid& n);
// Same search on a minor view of a matroid; the returned spec is relative to
// the view's ground set.
std::optional<MinorSpec> find_minor_spec(const MinorView& view, const RepMatroid& n);
// Every spec witnessing N in M, in the same order, up to `limit` of them.
std::vector<MinorSpec> all_minor_specs(const RepMatroid& m, const RepMatroid& n,
                                       std::size_t limit);

// An equivalent spec with C independent and D coindependent.
MinorSpec normalize_minor_spec(const RepMatroid& m, const MinorSpec& spec);
std::pair<Mask, Mask> normalize_minor_masks(const RepMatroid& m, Mask contract, Mask remove);

}  // namespace matlink

#endif  // MATLINK_MATROID_HPP_
