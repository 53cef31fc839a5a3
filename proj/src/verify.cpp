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


#include "matlink/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "matlink/connectivity.hpp"
#include "matlink/errors.hpp"
#include "matlink/extension.hpp"
#include "matlink/intertwine.hpp"
#include "matlink/matrix.hpp"
#include "matlink/separations.hpp"

namespace matlink {
namespace {

constexpr std::size_t kMaxReportedFailures = 20;

Mask bit(std::size_t i) { return Mask{1} << i; }
std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

std::size_t scaled(std::size_t base, double scale) {
  const double v = std::ceil(static_cast<double>(base) * scale);
  return v < 1 ? 1 : static_cast<std::size_t>(v);
}

std::string set_text(const RepMatroid& m, Mask x) {
  std::string out = "{";
  for (const auto& l : m.ordered(x)) out += (out.size() > 1 ? "," : "") + l;
  return out + "}";
}

// Rank function of M / contract \ removed, derived from the rank function of
// M alone. Used as the oracle everywhere below instead of MinorView.
class RankView {
 public:
  explicit RankView(const RepMatroid& m, Mask contract = 0, Mask removed = 0)
      : m_(&m), c_(contract), ground_(m.ground() & ~contract & ~removed),
        rc_(m.rank(contract)) {}

  Mask ground() const { return ground_; }
  std::size_t rank(Mask x) const { return m_->rank(x | c_) - rc_; }
  std::size_t corank(Mask x) const {
    return popcount(x) + rank(ground_ & ~x) - rank(ground_);
  }
  std::size_t lambda(Mask x) const { return rank(x) + rank(ground_ & ~x) - rank(ground_); }
  bool in_closure(Mask x, std::size_t e) const { return rank(x | bit(e)) == rank(x); }
  bool in_coclosure(Mask x, std::size_t e) const { return corank(x | bit(e)) == corank(x); }

  // min λ(X) over S ⊆ X ⊆ E - T.
  std::size_t kappa(Mask s, Mask t) const {
    const Mask mid = ground_ & ~s & ~t;
    std::size_t best = SIZE_MAX;
    for (Mask y = mid;; y = (y - 1) & mid) {
      best = std::min(best, lambda(s | y));
      if (y == 0) break;
    }
    return best;
  }

 private:
  const RepMatroid* m_;
  Mask c_;
  Mask ground_;
  std::size_t rc_;
};

std::vector<Label> default_labels(std::size_t n) {
  std::vector<Label> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
  return labels;
}

RepMatroid random_matroid(const FieldPtr& f, std::size_t r, std::size_t n, std::mt19937_64& rng) {
  Matrix a(f, r, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a.set_code(i, j, static_cast<std::uint32_t>(rng() % f->order()));
    }
  }
  return RepMatroid(a, default_labels(n));
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Disjoint nonempty S, T with sizes at most `most`.
std::pair<Mask, Mask> random_terminals(std::size_t n, std::size_t most, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t ns = uniform(rng, 1, std::min(most, n - 1));
  const std::size_t nt = uniform(rng, 1, std::min(most, n - ns));
  Mask s = 0;
  Mask t = 0;
  for (std::size_t i = 0; i < ns; ++i) s |= bit(idx[i]);
  for (std::size_t i = ns; i < ns + nt; ++i) t |= bit(idx[i]);
  return {s, t};
}

// ---------------------------------------------------------------- fields

std::vector<FieldPtr> suite_fields() {
  std::vector<FieldPtr> out;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) out.push_back(FieldSpec::gf(q));
  return out;
}

// Product of two elements as polynomials over GF(p), reduced by the modulus.
std::vector<std::uint32_t> poly_mul_mod(const FieldSpec& f, std::vector<std::uint32_t> a,
                                        std::vector<std::uint32_t> b) {
  const std::uint32_t p = f.characteristic();
  const std::size_t d = f.degree();
  a.resize(d, 0);
  b.resize(d, 0);
  std::vector<std::uint64_t> prod(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  if (d > 1) {
    const auto& mod = f.modulus();
    for (std::size_t top = 2 * d - 1; top >= d; --top) {
      const std::uint64_t c = prod[top];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= d; ++i) {
        prod[top - d + i] = (prod[top - d + i] + (p - c) * mod[i]) % p;
      }
    }
  }
  std::vector<std::uint32_t> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

void field_axioms(const FieldPtr& fp, InstanceOutcome& out) {
  const FieldSpec& f = *fp;
  const std::uint32_t q = f.order();
  const std::uint32_t p = f.characteristic();
  const std::string name = f.describe();
  auto coeffs = [&](std::uint32_t a) {
    auto c = f.coefficients(a);
    c.resize(f.degree(), 0);
    return c;
  };
  for (std::uint32_t a = 0; a < q; ++a) {
    if (f.add(a, 0) != a || f.mul(a, 1) != a || f.mul(a, 0) != 0) out.fail(name + ": identity");
    if (f.add(a, f.neg(a)) != 0) out.fail(name + ": additive inverse");
    if (a != 0 && f.mul(a, f.inv(a)) != 1) out.fail(name + ": multiplicative inverse");
    if (f.parse(f.format(a)) != a) out.fail(name + ": format/parse of " + f.format(a));
    for (std::uint32_t b = 0; b < q; ++b) {
      const std::uint32_t s = f.add(a, b);
      const std::uint32_t m = f.mul(a, b);
      if (s >= q || m >= q) out.fail(name + ": result out of range");
      if (s != f.add(b, a) || m != f.mul(b, a)) out.fail(name + ": commutativity");
      auto ca = coeffs(a);
      auto cb = coeffs(b);
      std::vector<std::uint32_t> sum(f.degree());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (ca[i] + cb[i]) % p;
      if (coeffs(s) != sum) out.fail(name + ": sum disagrees with coefficient addition");
      if (coeffs(m) != poly_mul_mod(f, ca, cb)) {
        out.fail(name + ": product disagrees with polynomial multiplication");
      }
      for (std::uint32_t c = 0; c < q; ++c) {
        if (f.add(s, c) != f.add(a, f.add(b, c))) out.fail(name + ": additive associativity");
        if (f.mul(m, c) != f.mul(a, f.mul(b, c))) out.fail(name + ": multiplicative associativity");
        if (f.mul(a, f.add(b, c)) != f.add(m, f.mul(a, c))) out.fail(name + ": distributivity");
        out.count("triples");
      }
    }
  }
  std::uint32_t acc = 0;
  for (long long k = 0; k < 2 * static_cast<long long>(p) + 3; ++k) {
    if (f.from_int(k) != acc) out.fail(name + ": from_int(" + std::to_string(k) + ")");
    if (f.from_int(-k) != f.neg(acc)) out.fail(name + ": from_int(-" + std::to_string(k) + ")");
    acc = f.add(acc, 1);
  }
}

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix a(f, r, c);
  // Bias towards zeros so that rank deficiency is common.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (rng() % 3 == 0) continue;
      a.set_code(i, j, static_cast<std::uint32_t>(rng() % f->order()));
    }
  }
  return a;
}

// Determinant by permutation expansion; only used on matrices up to 5x5.
std::uint32_t leibniz_det(const FieldSpec& f, const Matrix& a, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t det = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    std::uint32_t term = 1;
    for (std::size_t i = 0; i < perm.size() && term != 0; ++i) {
      term = f.mul(term, a.code(rows[i], cols[perm[i]]));
    }
    det = inversions % 2 ? f.sub(det, term) : f.add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Largest k with a nonsingular k x k submatrix.
std::size_t determinant_rank(const Matrix& a) {
  const FieldSpec& f = *a.field();
  const std::size_t rmax = std::min(a.rows(), a.cols());
  for (std::size_t k = rmax; k > 0; --k) {
    for (Mask rs = 0; rs < bit(a.rows()); ++rs) {
      if (popcount(rs) != k) continue;
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if ((rs >> i) & 1) rows.push_back(i);
      }
      for (Mask cs = 0; cs < bit(a.cols()); ++cs) {
        if (popcount(cs) != k) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < a.cols(); ++j) {
          if ((cs >> j) & 1) cols.push_back(j);
        }
        if (leibniz_det(f, a, rows, cols) != 0) return k;
      }
    }
  }
  return 0;
}

Matrix vstack(const Matrix& a, const Matrix& b) { return a.transpose().hconcat(b.transpose()).transpose(); }

bool is_rref(const Matrix& r, std::size_t rank, const std::vector<std::size_t>& pivots) {
  if (pivots.size() != rank) return false;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::optional<std::size_t> lead;
    for (std::size_t j = 0; j < r.cols() && !lead; ++j) {
      if (r.code(i, j) != 0) lead = j;
    }
    if (i >= rank) {
      if (lead) return false;
      continue;
    }
    if (!lead || *lead != pivots[i] || r.code(i, *lead) != 1) return false;
    if (i > 0 && pivots[i] <= pivots[i - 1]) return false;
    for (std::size_t k = 0; k < r.rows(); ++k) {
      if (k != i && r.code(k, *lead) != 0) return false;
    }
  }
  return true;
}

void linear_algebra_instance(const FieldPtr& f, std::mt19937_64& rng, InstanceOutcome& out) {
  const std::string name = f->describe();
  const std::size_t rows = uniform(rng, 1, 5);
  const std::size_t cols = uniform(rng, 1, 5);
  const Matrix a = random_matrix(f, rows, cols, rng);
  const auto red = rref_rank(a);
  const std::size_t dr = determinant_rank(a);
  if (red.rank != dr) out.fail(name + ": rref rank differs from determinant rank");
  if (rank(a.transpose()) != red.rank) out.fail(name + ": row rank differs from column rank");
  if (!is_rref(red.reduced, red.rank, red.pivots)) out.fail(name + ": output is not in rref");
  if (rank(vstack(a, red.reduced)) != red.rank) out.fail(name + ": rref changed the row space");
  if (!(rref_rank(red.reduced).reduced == red.reduced)) out.fail(name + ": rref not idempotent");

  const Matrix k = kernel_basis(a);
  if (k.cols() != cols - red.rank) out.fail(name + ": rank + nullity != columns");
  if (k.cols() > 0) {
    if (rank(k) != k.cols()) out.fail(name + ": kernel basis dependent");
    if (!(multiply(a, k) == Matrix(f, rows, k.cols()))) out.fail(name + ": A K != 0");
  }
  const Matrix cs = column_space_basis(a);
  if (cs.cols() != red.rank || (cs.cols() > 0 && rank(a.hconcat(cs)) != red.rank)) {
    out.fail(name + ": column space basis");
  }

  const Matrix b1 = random_matrix(f, rows, uniform(rng, 1, 4), rng);
  const Matrix b2 = random_matrix(f, rows, uniform(rng, 1, 4), rng);
  const std::size_t r1 = rank(b1);
  const std::size_t r2 = rank(b2);
  const std::size_t dim = r1 + r2 - rank(b1.hconcat(b2));
  const Matrix in = subspace_intersect(b1, b2);
  if (in.cols() != dim) out.fail(name + ": intersection dimension");
  if (in.cols() > 0) {
    if (rank(in) != in.cols()) out.fail(name + ": intersection basis dependent");
    if (rank(b1.hconcat(in)) != r1 || rank(b2.hconcat(in)) != r2) {
      out.fail(name + ": intersection leaves a summand");
    }
  }

  // Membership: a random combination is found, an arbitrary vector is found
  // exactly when it does not raise the rank.
  Matrix x = random_matrix(f, b1.cols(), 1, rng);
  const Matrix v = multiply(b1, x);
  const auto col = v.column(0);
  const auto sol = solve_membership(b1, col);
  if (!sol) {
    out.fail(name + ": combination not recognised as a member");
  } else {
    const Matrix back = multiply(b1, Matrix::from_columns(f, b1.cols(), {*sol}));
    if (!(back == v)) out.fail(name + ": membership coefficients wrong");
  }
  const Matrix w = random_matrix(f, rows, 1, rng);
  const bool member = rank(b1.hconcat(w)) == r1;
  if (solve_membership(b1, w.column(0)).has_value() != member) {
    out.fail(name + ": membership test disagrees with rank");
  }
  out.count("matrices", 4);
}

SuiteResult suite_fields(const SuiteOptions& opt) {
  const auto fields = suite_fields();
  const std::size_t per = scaled(1000, opt.scale);
  const std::size_t total = fields.size() * (1 + per);
  return run_instances("fields", total, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    if (i < fields.size()) {
      field_axioms(FieldSpec::gf(fields[i]->order()), out);
      out.count("axiom_fields");
      return out;
    }
    std::mt19937_64 rng(instance_seed(opt.seed, "fields", i));
    linear_algebra_instance(FieldSpec::gf(fields[(i - fields.size()) % fields.size()]->order()), rng,
                            out);
    return out;
  });
}

// ---------------------------------------------------------------- lemmas

void lemma_checks(const RepMatroid& m, InstanceOutcome& out) {
  const RankView v(m);
  const Mask e_all = m.ground();
  const std::size_t n = m.size();

  // e ∈ cl(A) iff e ∉ cl*(B) for every partition (A, {e}, B).
  for (std::size_t e = 0; e < n; ++e) {
    const Mask rest = e_all & ~bit(e);
    for (Mask a = rest;; a = (a - 1) & rest) {
      const Mask b = rest & ~a;
      const bool in_cl = (m.closure(a) >> e) & 1;
      const bool in_cocl = (m.coclosure(b) >> e) & 1;
      if (in_cl == in_cocl) out.fail("closure-complement at " + m.labels()[e] + ", A=" + set_text(m, a));
      out.count("closure_complement");
      if (a == 0) break;
    }
  }

  for (Mask x = 0; x <= e_all; ++x) {
    for (Mask y = x; y <= e_all; ++y) {
      if (m.lambda(x) + m.lambda(y) < m.lambda(x & y) + m.lambda(x | y)) {
        out.fail("submodularity at X=" + set_text(m, x) + ", Y=" + set_text(m, y));
      }
      out.count("submodular");
    }
  }

  for (Mask s = e_all;; s = (s - 1) & e_all) {
    const Mask not_s = e_all & ~s;
    for (Mask t = not_s;; t = (t - 1) & not_s) {
      const Mask mid = not_s & ~t;
      std::size_t k = SIZE_MAX;
      std::vector<Mask> minimal;
      for (Mask y = mid;; y = (y - 1) & mid) {
        const std::size_t l = v.lambda(s | y);
        if (l < k) {
          k = l;
          minimal.clear();
        }
        if (l == k) minimal.push_back(s | y);
        if (y == 0) break;
      }
      for (std::size_t i = 0; i < minimal.size(); ++i) {
        for (std::size_t j = i + 1; j < minimal.size(); ++j) {
          if (v.lambda(minimal[i] & minimal[j]) != k || v.lambda(minimal[i] | minimal[j]) != k) {
            out.fail("modular at S=" + set_text(m, s) + ", T=" + set_text(m, t));
          }
          out.count("modular");
        }
      }

      for (std::size_t e = 0; e < n; ++e) {
        if (((mid >> e) & 1) == 0) continue;
        const bool loop = m.rank(bit(e)) == 0;
        const bool coloop = m.corank(bit(e)) == 0;
        const Mask free = mid & ~bit(e);
        const Mask rest = e_all & ~bit(e);
        const RankView con(m, bit(e), 0);
        const RankView del(m, 0, bit(e));
        for (Mask y = free;; y = (y - 1) & free) {
          const Mask a = s | y;
          const Mask b = rest & ~a;
          const bool sep = v.lambda(a | bit(e)) == k;
          if (!loop) {
            const bool lhs = con.lambda(a) + 1 == k;
            const bool rhs = sep && v.in_closure(a, e) && v.in_closure(b, e);
            if (lhs != rhs) {
              out.fail("contract-closure at e=" + m.labels()[e] + ", A=" + set_text(m, a));
            }
            out.count("contract_closure");
          }
          if (!coloop) {
            const bool lhs = del.lambda(a) + 1 == k;
            const bool rhs = sep && v.in_coclosure(a, e) && v.in_coclosure(b, e);
            if (lhs != rhs) {
              out.fail("delete-coclosure at e=" + m.labels()[e] + ", A=" + set_text(m, a));
            }
            out.count("delete_coclosure");
          }
          if (y == 0) break;
        }
      }
      if (t == 0) break;
    }
    if (s == 0) break;
  }
}

// The GF(2) corpus followed by random GF(3) matroids with n <= 8.
struct LemmaCorpus {
  std::vector<RepMatroid> binary;
  std::size_t random = 0;

  std::size_t size() const { return binary.size() + random; }

  RepMatroid at(std::uint64_t seed, std::size_t i) const {
    if (i < binary.size()) return binary[i];
    std::mt19937_64 rng(instance_seed(seed, "corpus", i - binary.size()));
    const std::size_t n = uniform(rng, 1, 8);
    return random_matroid(FieldSpec::gf(3), uniform(rng, 1, 4), n, rng);
  }
};

LemmaCorpus lemma_corpus(const SuiteOptions& opt) {
  LemmaCorpus c;
  c.binary = binary_corpus(3, 6);
  if (opt.scale < 1) {
    // Keep an evenly spread subset.
    const std::size_t keep = scaled(c.binary.size(), opt.scale);
    std::vector<RepMatroid> sub;
    for (std::size_t i = 0; i < keep; ++i) sub.push_back(c.binary[i * c.binary.size() / keep]);
    c.binary = std::move(sub);
  }
  c.random = scaled(1000, opt.scale);
  return c;
}

SuiteResult suite_lemmas(const SuiteOptions& opt) {
  const auto corpus = lemma_corpus(opt);
  auto res = run_instances("lemmas", corpus.size(), opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    lemma_checks(corpus.at(opt.seed, i), out);
    out.count(i < corpus.binary.size() ? "binary_matroids" : "ternary_matroids");
    return out;
  });
  return res;
}

// ---------------------------------------------------------------- linking

void linking_checks(const RepMatroid& m, Mask s, Mask t, bool labelled, InstanceOutcome& out) {
  const std::string where = " at S=" + set_text(m, s) + ", T=" + set_text(m, t);
  const RankView v(m);
  const MinorView view(m);
  const std::size_t k = v.kappa(s, t);
  const std::size_t fast = labelled ? kappa_fast(m, m.set_of(s), m.set_of(t)) : kappa_fast(view, s, t);
  const std::size_t brute =
      labelled ? kappa_bruteforce(m, m.set_of(s), m.set_of(t)) : kappa_bruteforce(view, s, t);
  if (fast != k || brute != k) out.fail("kappa_fast/bruteforce disagree with the definition" + where);

  const Mask mid = m.ground() & ~s & ~t;
  const auto cert = linking_certificate(m, m.set_of(s), m.set_of(t));
  const Mask c = m.mask_of(cert.contract);
  const Mask d = m.mask_of(cert.remove);
  if (cert.achieved != k) out.fail("certificate achieved != kappa" + where);
  if ((c & d) != 0 || (c | d) != mid) out.fail("certificate does not partition the middle" + where);
  if (RankView(m, c, d).lambda(s) != k) out.fail("certificate minor has the wrong lambda(S)" + where);

  for (std::size_t e = 0; e < m.size(); ++e) {
    if (((mid >> e) & 1) == 0) continue;
    bool del = false;
    bool con = false;
    if (labelled) {
      const auto cls = classify_element(m, m.set_of(s), m.set_of(t), m.labels()[e]);
      del = cls.deletable;
      con = cls.contractible;
    } else {
      const auto flags = classify_element(view, s, t, e, k);
      del = flags.deletable;
      con = flags.contractible;
    }
    if (!del && !con) out.fail("element " + m.labels()[e] + " neither deletable nor contractible" + where);
    if (del != (RankView(m, 0, bit(e)).kappa(s, t) == k) ||
        con != (RankView(m, bit(e), 0).kappa(s, t) == k)) {
      out.fail("classification of " + m.labels()[e] + " disagrees with the definition" + where);
    }
    out.count(del && con ? "flexible" : del ? "deletable_only" : "contractible_only");
  }
  out.count("pairs");
}

SuiteResult suite_linking(const SuiteOptions& opt) {
  const auto corpus = lemma_corpus(opt);
  const std::size_t random = scaled(10000, opt.scale);
  return run_instances("linking", corpus.size() + random, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    std::mt19937_64 rng(instance_seed(opt.seed, "linking", i));
    if (i < corpus.binary.size()) {
      // Every ordered pair of disjoint nonempty S, T.
      const RepMatroid& m = corpus.binary[i];
      const Mask all = m.ground();
      for (Mask s = all; s != 0; s = (s - 1) & all) {
        const Mask rest = all & ~s;
        for (Mask t = rest; t != 0; t = (t - 1) & rest) linking_checks(m, s, t, false, out);
      }
      return out;
    }
    if (i < corpus.size()) {
      // Ordered pairs of singletons, plus a few larger random pairs.
      const RepMatroid m = corpus.at(opt.seed, i);
      for (std::size_t a = 0; a < m.size(); ++a) {
        for (std::size_t b = 0; b < m.size(); ++b) {
          if (a != b) linking_checks(m, bit(a), bit(b), false, out);
        }
      }
      if (m.size() >= 2) {
        for (int rep = 0; rep < 4; ++rep) {
          const auto [s, t] = random_terminals(m.size(), 3, rng);
          linking_checks(m, s, t, false, out);
        }
      }
      return out;
    }
    static const std::uint32_t kOrders[] = {2, 3, 4, 5, 7};
    const auto f = FieldSpec::gf(kOrders[rng() % 5]);
    const std::size_t n = uniform(rng, 3, 12);
    const RepMatroid m = random_matroid(f, uniform(rng, 1, 5), n, rng);
    const auto [s, t] = random_terminals(n, 3, rng);
    linking_checks(m, s, t, true, out);
    out.count("random_instances");
    return out;
  });
}

// ---------------------------------------------------------------- nested

void nested_checks(const RepMatroid& m, Mask s, Mask t, Mask f, InstanceOutcome& out) {
  const RankView v(m);
  const std::size_t k = v.kappa(s, t);
  const auto seq = nested_sequence_masks(m, s, t, f);
  const std::size_t len = seq.ordering.size();
  if (seq.order != k) out.fail("order differs from kappa");
  if (seq.sets.size() != len || seq.kinds.size() != len) {
    out.fail("sequence parts differ in length");
    return;
  }
  Mask listed = 0;
  for (auto e : seq.ordering) listed |= bit(e);
  if (listed != f || len != popcount(f)) out.fail("ordering is not a permutation of F");

  Mask prefix = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const Mask a = seq.sets[i];
    const Mask b = m.ground() & ~a;
    const std::size_t e = seq.ordering[i];
    const std::string at = " (i=" + std::to_string(i + 1) + ")";
    if ((a & s) != s || (a & t) != 0 || v.lambda(a) != k) out.fail("A_i is not S-T-separating of order k+1" + at);
    if (i > 0 && (seq.sets[i - 1] & ~a) != 0) out.fail("A_i does not contain A_{i-1}" + at);
    prefix |= bit(e);
    if ((a & f) != prefix) out.fail("A_i meets F in the wrong set" + at);
    const Mask a_minus = a & ~bit(e);
    bool ok = false;
    if (seq.kinds[i] == ClosureKind::kGuts) {
      ok = v.in_closure(a_minus, e) && v.in_closure(b, e);
      out.count("guts");
    } else {
      ok = v.in_coclosure(a_minus, e) && v.in_coclosure(b, e);
      out.count("coguts");
    }
    if (!ok) out.fail("f_i is not in the recorded closure" + at);
  }
  if (!verify_nested(m, s, t, f, seq).empty()) out.fail("library harness reports a violation");
  out.count("sequence_elements", len);
}

SuiteResult suite_nested(const SuiteOptions& opt) {
  const std::size_t count = scaled(1000, opt.scale);
  return run_instances("nested", count, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    std::mt19937_64 rng(instance_seed(opt.seed, "nested", i));
    for (int attempt = 0; attempt < 100; ++attempt) {
      const auto field = FieldSpec::gf(rng() % 2 ? 3 : 2);
      const std::size_t n = uniform(rng, 4, 10);
      const RepMatroid m = random_matroid(field, uniform(rng, 1, 4), n, rng);
      const auto [s, t] = random_terminals(n, 2, rng);
      const RankView v(m);
      const std::size_t k = v.kappa(s, t);
      std::vector<std::size_t> fixed;
      for (std::size_t e = 0; e < n; ++e) {
        if (((s | t) >> e) & 1) continue;
        const bool del = RankView(m, 0, bit(e)).kappa(s, t) == k;
        const bool con = RankView(m, bit(e), 0).kappa(s, t) == k;
        if (!(del && con)) fixed.push_back(e);
      }
      if (fixed.empty()) continue;
      std::shuffle(fixed.begin(), fixed.end(), rng);
      const std::size_t take = uniform(rng, 1, std::min<std::size_t>(4, fixed.size()));
      Mask f = 0;
      for (std::size_t j = 0; j < take; ++j) f |= bit(fixed[j]);
      nested_checks(m, s, t, f, out);
      out.count("attempts", attempt + 1);
      return out;
    }
    out.fail("no instance with a non-flexible element after 100 attempts");
    return out;
  });
}

// ---------------------------------------------------------------- extension

void extension_checks(const RepMatroid& m, Mask s, Mask t, Mask a, std::size_t k,
                      std::mt19937_64& rng, InstanceOutcome& out) {
  const std::uint32_t q = m.field()->order();
  std::size_t want = 0;
  for (std::size_t i = 0, p = 1; i < k; ++i, p *= q) want += p;

  const auto ext = extend_guts(m, make_separation(m, m.set_of(a)), "x");
  const RepMatroid& big = ext.extended;
  if (ext.x.size() != want) out.fail("point count " + std::to_string(ext.x.size()) + " != " + std::to_string(want));
  if (big.size() != m.size() + ext.x.size()) {
    out.fail("extension has the wrong size");
    return;
  }
  std::vector<std::size_t> base(m.size());
  std::iota(base.begin(), base.end(), 0);
  if (!(big.matrix().select_columns(base) == m.matrix()) ||
      !std::equal(m.labels().begin(), m.labels().end(), big.labels().begin())) {
    out.fail("extension altered the original columns");
  }
  Mask x = 0;
  for (const auto& l : ext.x) x |= bit(big.index_of(l));
  const RankView bv(big);
  const Mask b = m.ground() & ~a;
  // s points of rank k with no two parallel: all of PG(k-1, q).
  if (bv.rank(x) != k) out.fail("guts points do not span a rank-k space");
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (((x >> i) & 1) == 0) continue;
    if (bv.rank(bit(i)) != 1) out.fail("guts point is a loop");
    if (!bv.in_closure(a, i) || !bv.in_closure(b, i)) out.fail("guts point outside cl(A) ∩ cl(B)");
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      if (((x >> j) & 1) && bv.rank(bit(i) | bit(j)) != 2) out.fail("two guts points are parallel");
    }
  }

  // Linking partitions: the certificate, then random ones that happen to
  // satisfy lambda_{M/C\D}(S) = k.
  const Mask mid = m.ground() & ~s & ~t;
  std::vector<std::pair<Mask, Mask>> parts{linking_certificate_masks(m, s, t)};
  for (int tries = 0; tries < 30 && parts.size() < 4; ++tries) {
    const Mask c = mid & rng();
    if (RankView(m, c, mid & ~c).lambda(s) == k) parts.emplace_back(c, mid & ~c);
  }
  const ElementSet xs(ext.x.begin(), ext.x.end());
  for (const auto& [c, d] : parts) {
    const RankView after(big, c, d);
    for (Mask y = x;; y = (y - 1) & x) {
      if (after.rank(y) != bv.rank(y)) {
        out.fail("contraction of a linking partition changed the guts points");
        break;
      }
      if (y == 0) break;
    }
    if (!same_restriction(minor(big, c, d), big, xs)) out.fail("library restriction check disagrees");
    out.count("linking_partitions");
  }
  out.count("k" + std::to_string(k));
}

SuiteResult suite_extension(const SuiteOptions& opt) {
  const std::size_t count = scaled(200, opt.scale);
  return run_instances("extension", count, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    std::mt19937_64 rng(instance_seed(opt.seed, "extension", i));
    // Alternate k = 1 and k = 2 in pairs so that both fields see both.
    const std::size_t want = 1 + (i / 2) % 2;
    for (int attempt = 0; attempt < 500; ++attempt) {
      const auto field = FieldSpec::gf(i % 2 ? 3 : 2);
      const std::size_t n = uniform(rng, 4, 9);
      const RepMatroid m = random_matroid(field, uniform(rng, 2, 4), n, rng);
      const auto [s, t] = random_terminals(n, 2, rng);
      const RankView v(m);
      const std::size_t k = v.kappa(s, t);
      if (k != want) continue;
      std::vector<Mask> minimal;
      const Mask mid = m.ground() & ~s & ~t;
      for (Mask y = mid;; y = (y - 1) & mid) {
        if (v.lambda(s | y) == k) minimal.push_back(s | y);
        if (y == 0) break;
      }
      extension_checks(m, s, t, minimal[rng() % minimal.size()], k, rng, out);
      out.count("attempts", attempt + 1);
      return out;
    }
    out.fail("no separation of the wanted order after 500 attempts");
    return out;
  });
}

// ---------------------------------------------------------------- pigeonhole

bool advice_valid(const RepMatroid& m, Mask s, Mask t, const RepMatroid& n, const RemovalAdvice& adv) {
  if (!m.contains(adv.element)) return false;
  const std::size_t e = m.index_of(adv.element);
  if (((s | t) >> e) & 1) return false;
  const Mask c = adv.action == Action::kContract ? bit(e) : 0;
  const Mask d = adv.action == Action::kDelete ? bit(e) : 0;
  if (RankView(m, c, d).kappa(s, t) != RankView(m).kappa(s, t)) return false;
  const RepMatroid after = minor(m, c, d);
  if (!is_labeled_minor(after, n)) return false;
  for (const auto& l : adv.witness.contract) {
    if (!after.contains(l)) return false;
  }
  for (const auto& l : adv.witness.remove) {
    if (!after.contains(l)) return false;
  }
  return same_matroid(minor(after, adv.witness), n);
}

SuiteResult suite_pigeonhole(const SuiteOptions& opt) {
  const std::size_t count = scaled(100, opt.scale);
  return run_instances("pigeonhole", count, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    for (std::size_t attempt = 0; attempt < 200; ++attempt) {
      const auto inst = chain_instance(instance_seed(opt.seed, "pigeonhole", i * 1000 + attempt));
      const auto direct = find_removable_direct(inst.m, inst.s, inst.t, inst.n);
      if (!direct) continue;
      const Mask s = inst.m.mask_of(inst.s);
      const Mask t = inst.m.mask_of(inst.t);
      if (!advice_valid(inst.m, s, t, inst.n, *direct)) out.fail("direct finder advice invalid");
      const auto res = find_removable_pigeonhole(inst.m, inst.s, inst.t, inst.n);
      out.count(std::string("status_") + to_string(res.status));
      if (res.dualized) out.count("dualized");
      if (res.advice) {
        for (const auto& ev : res.transcript) {
          if (ev.event == "flexible" || ev.event == "collision") out.count("route_" + ev.event);
        }
        if (!advice_valid(inst.m, s, t, inst.n, *res.advice)) {
          out.fail(std::string("pigeonhole advice invalid: ") + to_string(res.advice->action) + " " +
                   res.advice->element);
        }
      } else if (res.status == PigeonholeStatus::kAdvice || res.status == PigeonholeStatus::kFallback) {
        out.fail("status claims advice but none was returned");
      }
      out.count("attempts", attempt + 1);
      out.count("elements", inst.m.size());
      return out;
    }
    out.fail("no instance where the direct finder succeeds after 200 attempts");
    return out;
  });
}

// ---------------------------------------------------------------- shrink

void shrink_checks(const RepMatroid& m, Mask q, Mask r, Mask s, Mask t, InstanceOutcome& out) {
  const std::size_t k = RankView(m).kappa(q, r);
  const std::size_t l = RankView(m).kappa(s, t);
  const auto res = shrink_intertwine(m, m.set_of(q), m.set_of(r), m.set_of(s), m.set_of(t));
  const RepMatroid& n = res.result;
  if (res.k != k || res.l != l) out.fail("reported connectivities differ from the input");
  const Mask nq = n.mask_of(m.set_of(q));
  const Mask nr = n.mask_of(m.set_of(r));
  const Mask ns = n.mask_of(m.set_of(s));
  const Mask nt = n.mask_of(m.set_of(t));
  const RankView nv(n);
  if (nv.kappa(nq, nr) != k || nv.kappa(ns, nt) != l) out.fail("result changed a connectivity");

  const Mask free = n.ground() & ~nq & ~nr & ~ns & ~nt;
  if (res.remaining != popcount(free)) out.fail("remaining count is wrong");
  for (std::size_t e = 0; e < n.size(); ++e) {
    if (((free >> e) & 1) == 0) continue;
    for (const bool contract : {false, true}) {
      const RankView after(n, contract ? bit(e) : 0, contract ? 0 : bit(e));
      if (after.kappa(nq, nr) == k && after.kappa(ns, nt) == l) {
        out.fail("element " + n.labels()[e] + " can still be " + (contract ? "contracted" : "deleted"));
      }
    }
  }
  if (!removable_for_both(n, n.set_of(nq), n.set_of(nr), n.set_of(ns), n.set_of(nt)).empty()) {
    out.fail("library still finds a removable element");
  }
  BigInt bound = 1;
  for (std::size_t i = 0; i < k + l; ++i) bound *= 4;
  if (res.bound != bound) out.fail("reported bound differs from 4^(k+l)");
  if (BigInt(res.remaining) >= bound) {
    out.fail(std::to_string(res.remaining) + " elements remain, bound " + bound.str());
  }

  ElementSet con;
  ElementSet del;
  for (const auto& step : res.log) (step.action == Action::kContract ? con : del).insert(step.element);
  if (con.size() + del.size() != res.log.size() || !same_matroid(minor(m, con, del), n)) {
    out.fail("replaying the log does not give the result");
  }
  out.count("removed", res.log.size());
  out.count("remaining", res.remaining);
  if (res.remaining > 0) out.count("nonempty_remainder");
  out.count("k_plus_l_" + std::to_string(k + l));
}

SuiteResult suite_shrink(const SuiteOptions& opt) {
  const std::size_t count = scaled(200, opt.scale);
  return run_instances("shrink", count, opt.jobs, [&](std::size_t i) {
    InstanceOutcome out;
    std::mt19937_64 rng(instance_seed(opt.seed, "shrink", i));
    if (i % 4 == 3) {
      // A small binary core where f must stay (contract-only for (Q,R),
      // delete-only for (S,T)), padded with random columns.
      static const std::uint32_t kCore[3][6] = {{1, 0, 1, 0, 1, 1}, {0, 0, 0, 1, 1, 0}, {1, 1, 1, 1, 1, 0}};
      const std::size_t n = 6 + uniform(rng, 1, 5);
      Matrix a(FieldSpec::gf(2), 3, n);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < n; ++c) a.set_code(r, c, c < 6 ? kCore[r][c] : rng() % 2);
      }
      shrink_checks(RepMatroid(a, default_labels(n)), bit(1) | bit(3), bit(0) | bit(2) | bit(4), bit(4),
                    bit(1) | bit(2), out);
      out.count("padded_core");
      return out;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
      const auto field = FieldSpec::gf(i % 2 ? 3 : 2);
      const std::size_t n = uniform(rng, 7, 11);
      const RepMatroid m = random_matroid(field, uniform(rng, 2, 5), n, rng);
      const auto [q, r] = random_terminals(n, 2, rng);
      const auto [s, t] = random_terminals(n, 2, rng);
      const std::size_t k = RankView(m).kappa(q, r);
      const std::size_t l = RankView(m).kappa(s, t);
      if (k + l > 3) continue;
      shrink_checks(m, q, r, s, t, out);
      out.count("attempts", attempt + 1);
      return out;
    }
    out.fail("no instance with k + l <= 3 after 200 attempts");
    return out;
  });
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t seed, const std::string& suite, std::size_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : suite) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix(splitmix(seed ^ h) + index);
}

SuiteResult run_instances(const std::string& name, std::size_t count, std::size_t jobs,
                          const InstanceFn& fn) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<InstanceOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        outcomes[i] = fn(i);
      } catch (const std::exception& ex) {
        outcomes[i] = InstanceOutcome{};
        outcomes[i].fail(std::string("exception: ") + ex.what());
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteResult res;
  res.name = name;
  res.instances = count;
  for (std::size_t i = 0; i < count; ++i) {
    for (auto& f : outcomes[i].failures) {
      ++res.violations;
      if (res.failures.size() < kMaxReportedFailures) {
        res.failures.push_back("#" + std::to_string(i) + ": " + f);
      }
    }
    for (const auto& [key, n] : outcomes[i].counts) res.stats[key] += n;
  }
  res.passed = res.violations == 0;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<std::string> suite_names() {
  return {"fields", "lemmas", "linking", "nested", "extension", "pigeonhole", "shrink"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "fields") return suite_fields(options);
  if (name == "lemmas") return suite_lemmas(options);
  if (name == "linking") return suite_linking(options);
  if (name == "nested") return suite_nested(options);
  if (name == "extension") return suite_extension(options);
  if (name == "pigeonhole") return suite_pigeonhole(options);
  if (name == "shrink") return suite_shrink(options);
  throw Error(ErrorCode::kInvalidSpec, "unknown suite '" + name + "'");
}

std::vector<RepMatroid> binary_corpus(std::size_t max_rank, std::size_t max_n) {
  const auto f = FieldSpec::gf(2);
  std::vector<RepMatroid> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<Label> labels;
    for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
    out.emplace_back(Matrix(f, 1, n), labels);
    for (std::size_t r = 1; r <= std::min(max_rank, n); ++r) {
      for (Mask piv = 0; piv < bit(n); ++piv) {
        if (popcount(piv) != r) continue;
        std::vector<std::size_t> pivots;
        for (std::size_t j = 0; j < n; ++j) {
          if ((piv >> j) & 1) pivots.push_back(j);
        }
        // Free entries: row i, columns right of its pivot that are not pivots.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = pivots[i] + 1; j < n; ++j) {
            if (((piv >> j) & 1) == 0) slots.emplace_back(i, j);
          }
        }
        for (Mask fill = 0; fill < bit(slots.size()); ++fill) {
          Matrix a(f, r, n);
          for (std::size_t i = 0; i < r; ++i) a.set_code(i, pivots[i], 1);
          for (std::size_t b = 0; b < slots.size(); ++b) {
            if ((fill >> b) & 1) a.set_code(slots[b].first, slots[b].second, 1);
          }
          out.emplace_back(a, labels);
        }
      }
    }
  }
  return out;
}

ChainInstance chain_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto f = FieldSpec::gf(rng() % 2 ? 3 : 2);
  const std::uint32_t q = f->order();
  const std::size_t n = uniform(rng, 8, 14);
  const std::size_t r = uniform(rng, n / 2 - 1, n / 2 + 1);
  const bool complementary = rng() % 2;
  std::vector<Label> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
  for (int attempt = 0;; ++attempt) {
    Matrix a(f, r, n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lo = r == 1 ? 0 : j * (r - 1) / (n - 1);
      const std::size_t hi = std::min(r - 1, lo + 1);
      bool nonzero = false;
      while (!nonzero) {
        for (std::size_t i = lo; i <= hi; ++i) {
          const auto c = static_cast<std::uint32_t>(rng() % q);
          a.set_code(i, j, c);
          nonzero = nonzero || c != 0;
        }
      }
    }
    RepMatroid m(a, labels);
    Mask keep = bit(0) | bit(n - 1);
    if (rng() % 2) keep |= bit(uniform(rng, 1, n - 2));
    const Mask rest = m.ground() & ~keep;
    Mask contract = rest & rng();
    if (complementary) {
      // Contract what the linking certificate deletes and vice versa. Kept
      // only when that spec is already normalized, so that a minor spec
      // disjoint from the certificate exists.
      const auto [c, d] = linking_certificate_masks(m, bit(0), bit(n - 1));
      contract = rest & d;
      const Mask removed = rest & c;
      const bool normal = m.rank(contract) == popcount(contract) &&
                          m.rank(m.ground() & ~removed) == m.rank();
      if (!normal && attempt < 50) continue;
    }
    RepMatroid target = minor(m, contract, rest & ~contract);
    return ChainInstance{std::move(m), ElementSet{labels.front()}, ElementSet{labels.back()},
                         std::move(target)};
  }
}

}  // namespace matlink
