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

#ifndef MATLINK_INTERTWINE_HPP_
#define MATLINK_INTERTWINE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matlink/field.hpp"
#include "matlink/matroid.hpp"

namespace matlink {

struct Bounds {
  BigInt c_minor;  // n + 2(n+1) q^(n^2)
  BigInt c_conn;   // 4^(k+l)
};

// Throws NotPrimePower unless q is a prime power.
Bounds bounds(std::uint64_t q, std::uint64_t n, std::uint64_t k, std::uint64_t l);
BigInt c_minor(std::uint64_t q, std::uint64_t n);
BigInt c_conn(std::uint64_t k, std::uint64_t l);

enum class Action { kDelete, kContract };

const char* to_string(Action action);

// One step of a finder's reasoning, in the order it happened. Fields that do
// not apply to a step stay empty.
struct TranscriptEntry {
  std::string event;
  std::optional<Label> element;
  std::optional<Action> action;
  std::optional<std::size_t> kappa_before;
  std::optional<std::size_t> kappa_after;
  std::optional<MinorSpec> witness;
  std::string note;
};

struct RemovalAdvice {
  Label element;
  Action action = Action::kDelete;
  std::size_t kappa = 0;
  MinorSpec witness;  // N = (M op e) / C \ D
  std::vector<TranscriptEntry> transcript;
};

// Labeled-minor tests against a fixed target N, memoized on the surviving
// labels and the reduced row echelon form of the candidate.
class MinorOracle {
 public:
  explicit MinorOracle(RepMatroid target) : target_(std::move(target)) {}

  const RepMatroid& target() const { return target_; }
  std::optional<MinorSpec> witness(const MinorView& view);
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  RepMatroid target_;
  std::map<std::string, std::optional<MinorSpec>> memo_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// Checks that removing `e` by `action` keeps kappa(S, T) and N; returns the
// minor witness when it does.
std::optional<MinorSpec> check_removal(const RepMatroid& m, Mask s, Mask t, std::size_t e,
                                       Action action, std::size_t kappa, MinorOracle& oracle);

// Scans E - (S ∪ T ∪ E(N)) in ground order, trying deletion before
// contraction. Throws NotAMinor when N is not a labeled minor of M.
std::optional<RemovalAdvice> find_removable_direct(const RepMatroid& m, const ElementSet& s,
                                                   const ElementSet& t, const RepMatroid& n);

enum class PigeonholeStatus {
  kAdvice,        // collision found, advice verified
  kNoCandidates,  // E - (S ∪ T ∪ E(N)) is empty
  kNoCollision,   // the thinned sequence produced pairwise distinct H_i
  kFallback,      // the certificate and every minor spec overlap; advice
                  // taken from the overlap and verified directly
};

const char* to_string(PigeonholeStatus status);

struct PigeonholeResult {
  PigeonholeStatus status = PigeonholeStatus::kNoCandidates;
  std::optional<RemovalAdvice> advice;
  std::vector<TranscriptEntry> transcript;
  bool dualized = false;
  std::size_t sequence_length = 0;  // |F|
  std::size_t thinned_length = 0;   // t after both thinning steps
};

// Removal through a collision H_i = H_j of canonical representations of the
// minors N_i built from guts extensions along a nested sequence.
PigeonholeResult find_removable_pigeonhole(const RepMatroid& m, const ElementSet& s,
                                           const ElementSet& t, const RepMatroid& n);

// Sweeps A - (S ∪ T) in ground order: delete a when kappa(S, T) survives and
// a ∉ cl*(B), else contract when kappa survives and a ∉ cl(B), else keep.
// Asserts kappa(S, T) and lambda(B) are unchanged at the end.
RepMatroid compress_side(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                         const ElementSet& a);

struct ShrinkStep {
  Label element;
  Action action = Action::kDelete;
};

struct ShrinkResult {
  RepMatroid result;
  std::vector<ShrinkStep> log;
  std::size_t k = 0;  // kappa(Q, R)
  std::size_t l = 0;  // kappa(S, T)
  std::size_t remaining = 0;  // |E - (Q ∪ R ∪ S ∪ T)| at the end
  BigInt bound;               // 4^(k+l)
};

// Removes elements outside Q ∪ R ∪ S ∪ T one at a time, keeping both kappas,
// until none qualifies.
ShrinkResult shrink_intertwine(const RepMatroid& m, const ElementSet& q, const ElementSet& r,
                               const ElementSet& s, const ElementSet& t);

// Elements of E - (Q ∪ R ∪ S ∪ T) whose deletion or contraction keeps both
// kappa(Q, R) and kappa(S, T).
std::vector<std::pair<Label, Action>> removable_for_both(const RepMatroid& m, const ElementSet& q,
                                                         const ElementSet& r, const ElementSet& s,
                                                         const ElementSet& t);

}  // namespace matlink

#endif  // MATLINK_INTERTWINE_HPP_
