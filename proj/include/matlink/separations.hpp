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

#ifndef MATLINK_SEPARATIONS_HPP_
#define MATLINK_SEPARATIONS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "matlink/connectivity.hpp"
#include "matlink/matroid.hpp"

namespace matlink {

enum class ClosureKind { kGuts, kCoguts };

const char* to_string(ClosureKind kind);

// Output of nested_sequence: an ordering f_1..f_t of F and sets A_1 ⊆ ... ⊆ A_t,
// each S-T-separating of order k+1, with A_i ∩ F = {f_1..f_i} and f_i in the
// guts (or coguts) of (A_i, E - A_i).
struct NestedSeqResult {
  std::vector<Label> ordering;
  std::vector<ElementSet> sets;
  std::vector<ClosureKind> kinds;
  std::size_t order = 0;
};

struct NestedMasks {
  std::vector<std::size_t> ordering;
  std::vector<Mask> sets;
  std::vector<ClosureKind> kinds;
  std::size_t order = 0;
};

// The inclusion-minimal A ⊇ S ∪ {e} with A ∩ T = ∅ and lambda(A) = kappa(S, T):
//   A = S ∪ {e} ∪ {f : kappa(S ∪ e, T ∪ f) > k}.
// Throws NoSuchSeparation when kappa(S ∪ e, T) > k.
Separation min_separation_through(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                                  const Label& e);
Mask min_separation_mask(const MinorView& m, Mask s, Mask t, std::size_t e, std::size_t k);

// Throws FlexibleElementInF (listing every offender) when F contains a
// flexible element, and Overlap when F meets S ∪ T.
NestedSeqResult nested_sequence(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                                const ElementSet& f);
NestedMasks nested_sequence_masks(const RepMatroid& m, Mask s, Mask t, Mask f);

NestedSeqResult to_labels(const RepMatroid& m, const NestedMasks& seq);
NestedMasks to_masks(const RepMatroid& m, const NestedSeqResult& seq);

// Recomputes the four conditions from scratch. Returns one message per
// violation; empty means the sequence is valid for (S, T, F).
std::vector<std::string> verify_nested(const RepMatroid& m, Mask s, Mask t, Mask f,
                                       const NestedMasks& seq);

// M / (C ∩ (A_j - A_i)) \ (D ∩ (A_j - A_i)) for 1-based i < j. Checks that
// lambda(A_i) is still k and that M agrees with the result on A_i and on
// E - A_j; a failed check is an internal error.
RepMatroid excise_middle(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                         const NestedSeqResult& seq, const LinkingCertificate& cert,
                         std::size_t i, std::size_t j);

}  // namespace matlink

#endif  // MATLINK_SEPARATIONS_HPP_
