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

#include "matlink/intertwine.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "matlink/connectivity.hpp"
#include "matlink/errors.hpp"
#include "matlink/extension.hpp"
#include "matlink/separations.hpp"

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

constexpr std::size_t kSpecLimit = 4096;

MinorView apply(const RepMatroid& m, std::size_t e, Action action) {
  return action == Action::kDelete ? MinorView(m, 0, bit(e)) : MinorView(m, bit(e), 0);
}

MinorView apply(const MinorView& v, std::size_t e, Action action) {
  return action == Action::kDelete ? v.delete_element(e) : v.contract_element(e);
}

Mask labels_in(const RepMatroid& m, const RepMatroid& n) {
  Mask out = 0;
  for (const auto& l : n.labels()) {
    if (!m.contains(l)) {
      throw Error(ErrorCode::kLabelNotSubset, "minor label '" + l + "' is not in M");
    }
    out |= bit(m.index_of(l));
  }
  return out;
}

std::string matrix_key(const Matrix& a) {
  std::ostringstream out;
  out << a.rows() << 'x' << a.cols() << ':';
  if (a.is_finite()) {
    for (auto c : a.codes()) out << c << ',';
  } else {
    for (const auto& v : a.rationals()) out << format_rational(v) << ',';
  }
  return out.str();
}

Matrix nonzero_rref(const Matrix& a) {
  const RrefResult r = rref_rank(a);
  std::vector<std::size_t> keep(r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) keep[i] = i;
  return r.reduced.select_rows(keep);
}

TranscriptEntry event(std::string name, std::string note = {}) {
  TranscriptEntry e;
  e.event = std::move(name);
  e.note = std::move(note);
  return e;
}

std::string fresh_prefix(const RepMatroid& m, std::size_t count) {
  std::string prefix = "x";
  while (true) {
    bool clash = false;
    for (std::size_t j = 0; j < count && !clash; ++j) {
      clash = m.contains(prefix + "_" + std::to_string(j));
    }
    if (!clash) return prefix;
    prefix += "x";
  }
}

RemovalAdvice make_advice(const RepMatroid& m, std::size_t e, Action action, std::size_t k,
                          MinorSpec witness, std::vector<TranscriptEntry> transcript) {
  TranscriptEntry step = event("removal");
  step.element = m.labels()[e];
  step.action = action;
  step.kappa_before = k;
  step.kappa_after = k;
  step.witness = witness;
  transcript.push_back(step);
  return RemovalAdvice{m.labels()[e], action, k, std::move(witness), std::move(transcript)};
}

}  // namespace

BigInt c_minor(std::uint64_t q, std::uint64_t n) {
  if (prime_power(q).first == 0) {
    throw Error(ErrorCode::kNotPrimePower, std::to_string(q) + " is not a prime power");
  }
  if (n > 4096) throw Error(ErrorCode::kTooLarge, "n too large for the minor bound");
  const BigInt power = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n * n));
  return BigInt(n) + 2 * BigInt(n + 1) * power;
}

BigInt c_conn(std::uint64_t k, std::uint64_t l) {
  if (k + l > 1u << 16) throw Error(ErrorCode::kTooLarge, "k + l too large for the bound");
  return boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k + l));
}

Bounds bounds(std::uint64_t q, std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  return Bounds{c_minor(q, n), c_conn(k, l)};
}

const char* to_string(Action action) {
  return action == Action::kDelete ? "delete" : "contract";
}

const char* to_string(PigeonholeStatus status) {
  switch (status) {
    case PigeonholeStatus::kAdvice: return "advice";
    case PigeonholeStatus::kNoCandidates: return "no_candidates";
    case PigeonholeStatus::kNoCollision: return "no_collision";
    case PigeonholeStatus::kFallback: return "fallback";
  }
  return "unknown";
}

std::optional<MinorSpec> MinorOracle::witness(const MinorView& view) {
  const RepMatroid& base = view.base();
  const RepMatroid candidate = minor(base, view.contracted(), view.deleted());
  std::string key;
  for (const auto& l : candidate.labels()) key += l + '\x1f';
  key += matrix_key(nonzero_rref(candidate.matrix()));
  if (auto it = memo_.find(key); it != memo_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  auto found = find_minor_spec(view, target_);
  memo_.emplace(std::move(key), found);
  return found;
}

std::optional<MinorSpec> check_removal(const RepMatroid& m, Mask s, Mask t, std::size_t e,
                                       Action action, std::size_t kappa, MinorOracle& oracle) {
  const MinorView view = apply(m, e, action);
  if (kappa_fast(view, s, t) != kappa) return std::nullopt;
  return oracle.witness(view);
}

std::optional<RemovalAdvice> find_removable_direct(const RepMatroid& m, const ElementSet& s,
                                                   const ElementSet& t, const RepMatroid& n) {
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  check_terminals(MinorView(m), ms, mt);
  const Mask en = labels_in(m, n);
  MinorOracle oracle(n);
  const auto base = oracle.witness(MinorView(m));
  if (!base) throw Error(ErrorCode::kNotAMinor, "N is not a labeled minor of M");
  const std::size_t k = kappa_fast(MinorView(m), ms, mt);

  std::vector<TranscriptEntry> transcript;
  TranscriptEntry start = event("kappa");
  start.kappa_before = k;
  start.witness = base;
  transcript.push_back(start);
  for (auto e : bits_of(m.ground() & ~(ms | mt | en))) {
    for (Action action : {Action::kDelete, Action::kContract}) {
      if (auto w = check_removal(m, ms, mt, e, action, k, oracle)) {
        return make_advice(m, e, action, k, std::move(*w), std::move(transcript));
      }
    }
  }
  return std::nullopt;
}

PigeonholeResult find_removable_pigeonhole(const RepMatroid& m, const ElementSet& s,
                                           const ElementSet& t, const RepMatroid& n) {
  if (!m.field()->is_finite()) {
    throw Error(ErrorCode::kInfiniteField, "the pigeonhole finder needs a finite field");
  }
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const MinorView whole(m);
  check_terminals(whole, ms, mt);
  const Mask en = labels_in(m, n);
  MinorOracle oracle(n);
  const auto base = oracle.witness(whole);
  if (!base) throw Error(ErrorCode::kNotAMinor, "N is not a labeled minor of M");
  const std::size_t k = kappa_fast(whole, ms, mt);

  PigeonholeResult out;
  auto& log = out.transcript;
  TranscriptEntry start = event("kappa");
  start.kappa_before = k;
  log.push_back(start);

  auto verified = [&](std::size_t e, Action action, PigeonholeStatus status) {
    auto w = check_removal(m, ms, mt, e, action, k, oracle);
    if (!w) return false;
    out.status = status;
    out.advice = make_advice(m, e, action, k, std::move(*w), log);
    return true;
  };

  if ((m.ground() & ~(ms | mt | en)) == 0) {
    out.status = PigeonholeStatus::kNoCandidates;
    return out;
  }

  const auto [c, d] = linking_certificate_masks(m, ms, mt);
  TranscriptEntry cert = event("certificate");
  cert.witness = MinorSpec{m.set_of(c), m.set_of(d)};
  cert.kappa_after = k;
  log.push_back(cert);

  // A minor spec for N avoiding the certificate on both sides.
  std::optional<std::pair<Mask, Mask>> spec;
  std::optional<std::pair<std::size_t, Action>> overlap;
  for (const auto& raw : all_minor_specs(m, n, kSpecLimit)) {
    const auto [cn, dn] = normalize_minor_masks(m, m.mask_of(raw.contract), m.mask_of(raw.remove));
    if ((c & cn) == 0 && (d & dn) == 0) {
      spec = {cn, dn};
      break;
    }
    if (!overlap) {
      if ((c & cn) != 0) {
        overlap = {static_cast<std::size_t>(std::countr_zero(c & cn)), Action::kContract};
      } else {
        overlap = {static_cast<std::size_t>(std::countr_zero(d & dn)), Action::kDelete};
      }
    }
  }
  if (!spec) {
    // e ∈ C ∩ C_N: M / C \ D is a minor of M / e, so kappa holds, and N is a
    // minor of M / e by definition. Deletion is symmetric.
    log.push_back(event("fallback", "certificate meets every normalized minor spec"));
    if (!overlap || !verified(overlap->first, overlap->second, PigeonholeStatus::kFallback)) {
      internal_error("overlap element failed verification");
    }
    return out;
  }
  const auto [cn, dn] = *spec;
  TranscriptEntry minor_spec = event("minor-spec");
  minor_spec.witness = MinorSpec{m.set_of(cn), m.set_of(dn)};
  log.push_back(minor_spec);

  const Mask f = (c | d) & ~en;
  out.sequence_length = popcount(f);
  for (auto e : bits_of(f)) {
    const auto flags = classify_element(whole, ms, mt, e, k);
    if (flags.deletable && flags.contractible) {
      // e ∉ E(N) lies in D_N when e ∈ C and in C_N when e ∈ D.
      const Action action = has(c, e) ? Action::kDelete : Action::kContract;
      TranscriptEntry flex = event("flexible");
      flex.element = m.labels()[e];
      log.push_back(flex);
      if (!verified(e, action, PigeonholeStatus::kAdvice)) {
        internal_error("flexible element failed verification");
      }
      return out;
    }
  }

  const NestedMasks seq = nested_sequence_masks(m, ms, mt, f);
  log.push_back(event("nested", "length " + std::to_string(seq.sets.size())));

  // Keep the largest class of constant A_i ∩ E(N); earliest class on ties.
  std::map<Mask, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < seq.sets.size(); ++i) classes[seq.sets[i] & en].push_back(i);
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& [key, positions] : classes) {
    if (!best || positions.size() > best->size() ||
        (positions.size() == best->size() && positions.front() < best->front())) {
      best = &positions;
    }
  }
  std::vector<std::size_t> kept = best ? *best : std::vector<std::size_t>{};
  log.push_back(event("thin-minor", "kept " + std::to_string(kept.size())));

  std::size_t in_c = 0;
  for (auto i : kept) in_c += has(c, seq.ordering[i]) ? 1 : 0;
  out.dualized = in_c < kept.size() - in_c;
  const RepMatroid w = out.dualized ? dual(m) : m;
  const Mask wc = out.dualized ? d : c;
  const Mask wcn = out.dualized ? dn : cn;
  const Mask wdn = out.dualized ? cn : dn;
  if (out.dualized) log.push_back(event("dualize"));

  std::vector<Mask> sets;
  for (auto i : kept) {
    if (sets.empty() || (seq.sets[i] & ~sets.back() & wc) != 0) sets.push_back(seq.sets[i]);
  }
  out.thinned_length = sets.size();
  log.push_back(event("thin-gaps", "kept " + std::to_string(sets.size())));

  std::vector<Matrix> reps;
  const ElementSet contract_labels = w.set_of(wc);
  for (const Mask a : sets) {
    const Separation sep = make_separation(w, w.set_of(a));
    const std::size_t points = k == 0 ? 0 : pg_points(k, w.field()).cols();
    const PgExtension ext = extend_guts(w, sep, fresh_prefix(w, points));
    auto labels = canonical_guts_labels(w, contract_labels, ext);
    std::sort(labels.begin(), labels.end(), [](const GutsLabel& x, const GutsLabel& y) {
      return std::lexicographical_compare(
          x.coords.begin(), x.coords.end(), y.coords.begin(), y.coords.end(),
          [](const Scalar& u, const Scalar& v) { return u.code() < v.code(); });
    });
    const Mask b = w.ground() & ~a;
    const RepMatroid ni = minor(ext.extended, wcn & b, a | (wdn & b));

    std::vector<std::vector<Scalar>> columns;
    for (auto e : bits_of(b & en)) columns.push_back(ni.matrix().column(ni.index_of(w.labels()[e])));
    for (const auto& g : labels) {
      auto col = ni.matrix().column(ni.index_of(g.label));
      for (auto& v : col) v = v * g.scale;
      columns.push_back(std::move(col));
    }
    reps.push_back(nonzero_rref(Matrix::from_columns(w.field(), ni.matrix().rows(), columns)));
  }

  const Action action = out.dualized ? Action::kDelete : Action::kContract;
  for (std::size_t j = 1; j < reps.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!(reps[i] == reps[j])) continue;
      TranscriptEntry hit = event("collision", "H_" + std::to_string(i + 1) + " = H_" +
                                                   std::to_string(j + 1));
      log.push_back(hit);
      for (auto e : bits_of(sets[j] & ~sets[i] & wc)) {
        if (verified(e, action, PigeonholeStatus::kAdvice)) return out;
      }
      log.push_back(event("collision-rejected"));
    }
  }
  out.status = PigeonholeStatus::kNoCollision;
  return out;
}

RepMatroid compress_side(const RepMatroid& m, const ElementSet& s, const ElementSet& t,
                         const ElementSet& a) {
  const Mask ms = m.mask_of(s);
  const Mask mt = m.mask_of(t);
  const Mask ma = m.mask_of(a);
  MinorView current(m);
  check_terminals(current, ms, mt);
  const std::size_t l = kappa_fast(current, ms, mt);
  const Mask b = m.ground() & ~ma;
  const std::size_t order = m.lambda(ma);
  for (auto e : bits_of(ma & ~ms & ~mt)) {
    const MinorView without = current.delete_element(e);
    if (kappa_fast(without, ms, mt) == l && !has(current.coclosure(b), e)) {
      current = without;
      continue;
    }
    const MinorView contracted = current.contract_element(e);
    if (kappa_fast(contracted, ms, mt) == l && !has(current.closure(b), e)) {
      current = contracted;
    }
  }
  if (kappa_fast(current, ms, mt) != l) internal_error("side compression lost kappa(S, T)");
  if (current.lambda(b) != order) internal_error("side compression changed lambda(B)");
  return minor(m, current.contracted(), current.deleted());
}

std::vector<std::pair<Label, Action>> removable_for_both(const RepMatroid& m, const ElementSet& q,
                                                         const ElementSet& r, const ElementSet& s,
                                                         const ElementSet& t) {
  const MinorView view(m);
  const Mask mq = m.mask_of(q), mr = m.mask_of(r), ms = m.mask_of(s), mt = m.mask_of(t);
  check_terminals(view, mq, mr);
  check_terminals(view, ms, mt);
  const std::size_t k = kappa_fast(view, mq, mr);
  const std::size_t l = kappa_fast(view, ms, mt);
  std::vector<std::pair<Label, Action>> out;
  for (auto e : bits_of(m.ground() & ~(mq | mr | ms | mt))) {
    for (Action action : {Action::kDelete, Action::kContract}) {
      const MinorView next = apply(view, e, action);
      if (kappa_fast(next, mq, mr) == k && kappa_fast(next, ms, mt) == l) {
        out.emplace_back(m.labels()[e], action);
      }
    }
  }
  return out;
}

ShrinkResult shrink_intertwine(const RepMatroid& m, const ElementSet& q, const ElementSet& r,
                               const ElementSet& s, const ElementSet& t) {
  MinorView current(m);
  const Mask mq = m.mask_of(q), mr = m.mask_of(r), ms = m.mask_of(s), mt = m.mask_of(t);
  check_terminals(current, mq, mr);
  check_terminals(current, ms, mt);
  const Mask terminals = mq | mr | ms | mt;
  const std::size_t k = kappa_fast(current, mq, mr);
  const std::size_t l = kappa_fast(current, ms, mt);

  std::vector<ShrinkStep> log;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto e : bits_of(current.ground() & ~terminals)) {
      for (Action action : {Action::kDelete, Action::kContract}) {
        const MinorView next = apply(current, e, action);
        if (kappa_fast(next, mq, mr) == k && kappa_fast(next, ms, mt) == l) {
          current = next;
          log.push_back(ShrinkStep{m.labels()[e], action});
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  RepMatroid result = minor(m, current.contracted(), current.deleted());
  const std::size_t remaining = popcount(current.ground() & ~terminals);
  return ShrinkResult{std::move(result), std::move(log), k, l, remaining, c_conn(k, l)};
}

}  // namespace matlink
