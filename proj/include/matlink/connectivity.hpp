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

#ifndef MATLINK_CONNECTIVITY_HPP_
#define MATLINK_CONNECTIVITY_HPP_

#include <cstddef>
#include <functional>
#include <utility>

#include "matlink/matroid.hpp"

namespace matlink {

// kappa_M(S, T) = min { lambda(X) : S ⊆ X ⊆ E - T } by enumerating every X.
// The free part E - S - T may have at most 24 elements.
std::size_t kappa_bruteforce(const RepMatroid& m, const ElementSet& s, const ElementSet& t);
std::size_t kappa_bruteforce(const MinorView& m, Mask s, Mask t);

// kappa_M(S, T) through matroid intersection:
//   r(S) + r(T) - r(E) + max |I|, I common independent in (M/S)\T and (M/T)\S.
std::size_t kappa_fast(const RepMatroid& m, const ElementSet& s, const ElementSet& t);
std::size_t kappa_fast(const MinorView& m, Mask s, Mask t);

using RankOracle = std::function<std::size_t(Mask)>;

// Maximum common independent set of two matroids on `ground` given by rank
// oracles, by shortest augmenting paths in the exchange graph. Elements are
// scanned in increasing index order, which makes the result deterministic.
Mask max_common_independent(Mask ground, const RankOracle& r1, const RankOracle& r2);

// Labels must agree as sets; the scan follows m1's label order.
ElementSet matroid_intersection_max(const RepMatroid& m1, const RepMatroid& m2);

struct ElementClass {
  Label element;
  bool deletable = false;
  bool contractible = false;

  bool flexible() const { return deletable && contractible; }
};

ElementClass classify_element(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                              const Label& e);

struct ElementFlags {
  bool deletable = false;
  bool contractible = false;
};
// `kappa` must be kappa(S, T) in m.
ElementFlags classify_element(const MinorView& m, Mask s, Mask t, std::size_t e,
                              std::size_t kappa);

// A minor M / C \ D on S ∪ T with lambda(S) = kappa(S, T). C is independent
// and D coindependent.
struct LinkingCertificate {
  ElementSet contract;
  ElementSet remove;
  std::size_t achieved = 0;
};

LinkingCertificate linking_certificate(const RepMatroid& m, const ElementSet& s,
                                       const ElementSet& t);
std::pair<Mask, Mask> linking_certificate_masks(const RepMatroid& m, Mask s, Mask t);

// S1 ⊆ S and T1 ⊆ T with |S1| = |T1| = kappa(S1, T1) = kappa(S, T).
std::pair<ElementSet, ElementSet> linked_subsets(const RepMatroid& m, const ElementSet& s,
                                                 const ElementSet& t);

// Throws Overlap / UnknownLabel for sets that are not disjoint subsets of the
// view's ground set.
void check_terminals(const MinorView& m, Mask s, Mask t);

}  // namespace matlink

#endif  // MATLINK_CONNECTIVITY_HPP_
