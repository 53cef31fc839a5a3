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

#include "matlink/separations.hpp"

#include <bit>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

bool has(Mask m, std::size_t i) { return ((m >> i) & 1) != 0; }

std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

bool in_guts(const RepMatroid& m, Mask a, std::size_t f) {
  const Mask rest = a & ~bit(f);
  return has(m.closure(rest), f) && has(m.closure(m.ground() & ~a), f);
}

bool in_coguts(const RepMatroid& m, Mask a, std::size_t f) {
  const Mask rest = a & ~bit(f);
  return has(m.coclosure(rest), f) && has(m.coclosure(m.ground() & ~a), f);
}

}  // namespace

const char* to_string(ClosureKind kind) {
  return kind == ClosureKind::kGuts ? "guts" : "coguts";
}

Mask min_separation_mask(const MinorView& m, Mask s, Mask t, std::size_t e, std::size_t k) {
  const Mask grown = s | bit(e);
  if (kappa_fast(m, grown, t) != k) {
    throw Error(ErrorCode::kNoSuchSeparation,
                "no separation of order " + std::to_string(k + 1) + " contains S and '" +
                    m.base().labels()[e] + "'");
  }
  Mask a = grown;
  for (auto f : bits_of(m.ground() & ~grown & ~t)) {
    if (kappa_fast(m, grown, t | bit(f)) > k) a |= bit(f);
  }
  return a;
}

Separation min_separation_through(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                                  const Label& e) {
  if (!m.contains(e)) throw Error(ErrorCode::kBadElement, "unknown element '" + e + "'");
  const MinorView view(m);
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  check_terminals(view, ms, mt);
  const std::size_t idx = m.index_of(e);
  if (has(ms | mt, idx)) throw Error(ErrorCode::kBadElement, "element must lie outside S ∪ T");
  const std::size_t k = kappa_fast(view, ms, mt);
  const Mask a = min_separation_mask(view, ms, mt, idx, k);
  return Separation{m.set_of(a), m.lambda(a)};
}

NestedMasks nested_sequence_masks(const RepMatroid& m, Mask s, Mask t, Mask f) {
  const MinorView view(m);
  check_terminals(view, s, t);
  if ((f & (s | t)) != 0) throw Error(ErrorCode::kOverlap, "F meets S ∪ T");
  if ((f & ~m.ground()) != 0) throw Error(ErrorCode::kUnknownLabel, "F leaves the ground set");

  NestedMasks out;
  out.order = kappa_fast(view, s, t);
  std::string flexible;
  for (auto e : bits_of(f)) {
    const auto flags = classify_element(view, s, t, e, out.order);
    if (flags.deletable && flags.contractible) {
      flexible += (flexible.empty() ? "" : ",") + m.labels()[e];
    }
  }
  if (!flexible.empty()) {
    throw Error(ErrorCode::kFlexibleElementInF, "flexible elements in F: " + flexible);
  }

  Mask current_s = s;
  Mask remaining = f;
  while (remaining != 0) {
    Mask best = 0;
    std::size_t chosen = 0;
    bool found = false;
    for (auto e : bits_of(remaining)) {
      const Mask a = min_separation_mask(view, current_s, t, e, out.order);
      if (!found || popcount(a) < popcount(best)) {
        best = a;
        chosen = e;
        found = true;
      }
    }
    if ((best & remaining) != bit(chosen)) {
      internal_error("minimal separation holds more than one element of F");
    }
    out.ordering.push_back(chosen);
    out.sets.push_back(best);
    if (in_guts(m, best, chosen)) {
      out.kinds.push_back(ClosureKind::kGuts);
    } else if (in_coguts(m, best, chosen)) {
      out.kinds.push_back(ClosureKind::kCoguts);
    } else {
      internal_error("'" + m.labels()[chosen] + "' lies in neither guts nor coguts");
    }
    current_s = best;
    remaining &= ~bit(chosen);
  }
  return out;
}

NestedSeqResult nested_sequence(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                                const ElementSet& f) {
  return to_labels(m, nested_sequence_masks(m, m.mask_of(s), m.mask_of(t), m.mask_of(f)));
}

NestedSeqResult to_labels(const RepMatroid& m, const NestedMasks& seq) {
  NestedSeqResult out;
  out.order = seq.order;
  out.kinds = seq.kinds;
  for (auto e : seq.ordering) out.ordering.push_back(m.labels()[e]);
  for (auto a : seq.sets) out.sets.push_back(m.set_of(a));
  return out;
}

NestedMasks to_masks(const RepMatroid& m, const NestedSeqResult& seq) {
  NestedMasks out;
  out.order = seq.order;
  out.kinds = seq.kinds;
  for (const auto& e : seq.ordering) out.ordering.push_back(m.index_of(e));
  for (const auto& a : seq.sets) out.sets.push_back(m.mask_of(a));
  return out;
}

std::vector<std::string> verify_nested(const RepMatroid& m, Mask s, Mask t, Mask f,
                                       const NestedMasks& seq) {
  std::vector<std::string> problems;
  const MinorView view(m);
  const std::size_t mid = popcount(m.ground() & ~s & ~t);
  const std::size_t k = mid <= 16 ? kappa_bruteforce(view, s, t) : kappa_fast(view, s, t);
  if (seq.order != k) problems.push_back("recorded order differs from kappa");
  const std::size_t n = seq.ordering.size();
  if (seq.sets.size() != n || seq.kinds.size() != n) {
    problems.push_back("ordering, sets and kinds differ in length");
    return problems;
  }
  Mask listed = 0;
  for (auto e : seq.ordering) listed |= bit(e);
  if (listed != f || popcount(listed) != n) problems.push_back("ordering is not a permutation of F");

  Mask prefix = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Mask a = seq.sets[i];
    const std::size_t e = seq.ordering[i];
    const std::string at = "A_" + std::to_string(i + 1);
    if ((a & s) != s || (a & t) != 0) problems.push_back(at + " does not separate S from T");
    if (m.lambda(a) != k) problems.push_back(at + " has the wrong order");
    if (i > 0 && (seq.sets[i - 1] & ~a) != 0) problems.push_back(at + " does not contain its predecessor");
    prefix |= bit(e);
    if ((a & f) != prefix) problems.push_back(at + " meets F in the wrong set");
    const bool ok = seq.kinds[i] == ClosureKind::kGuts ? in_guts(m, a, e) : in_coguts(m, a, e);
    if (!ok) problems.push_back("f_" + std::to_string(i + 1) + " is not in the recorded closure");
  }
  return problems;
}

RepMatroid excise_middle(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                         const NestedSeqResult& seq, const LinkingCertificate& cert,
                         std::size_t i, std::size_t j) {
  const std::size_t len = seq.sets.size();
  if (i < 1 || j <= i || j > len) {
    throw Error(ErrorCode::kBadIndices, "need 1 <= i < j <= " + std::to_string(len));
  }
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const Mask c = m.mask_of(cert.contract);
  const Mask d = m.mask_of(cert.remove);
  const MinorView view(m);
  check_terminals(view, ms, mt);
  const std::size_t k = kappa_fast(view, ms, mt);
  if ((c & d) != 0 || (c | d) != (m.ground() & ~ms & ~mt)) {
    throw Error(ErrorCode::kInvalidSpec, "certificate must partition E - (S ∪ T)");
  }
  if (m.rank(c) != popcount(c) || m.corank(d) != popcount(d) ||
      MinorView(m, c, d).lambda(ms) != k) {
    throw Error(ErrorCode::kInvalidSpec, "certificate is not a normalized linking minor");
  }
  const Mask ai = m.mask_of(seq.sets[i - 1]);
  const Mask aj = m.mask_of(seq.sets[j - 1]);
  const Mask middle = aj & ~ai;
  const RepMatroid result = minor(m, c & middle, d & middle);

  const Mask bj = m.ground() & ~aj;
  if (lambda(result, m.set_of(ai)) != k) internal_error("excision changed lambda(A_i)");
  if (!same_restriction(result, m, m.set_of(ai))) internal_error("excision changed M|A_i");
  if (!same_restriction(result, m, m.set_of(bj))) internal_error("excision changed M|B_j");
  return result;
}

}  // namespace matlink
