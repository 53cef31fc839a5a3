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


#include "matlink/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "matlink/connectivity.hpp"
#include "matlink/errors.hpp"
#include "matlink/extension.hpp"
#include "matlink/intertwine.hpp"
#include "matlink/io.hpp"
#include "matlink/separations.hpp"

namespace matlink {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string matroid;
  std::string target;
  std::vector<std::string> s, t, q, r, x, f, contract, remove;
  std::string element;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string method = "direct";
  std::string prefix = "x";
  std::string label = "p";
  std::uint64_t bq = 0, bn = 0, bk = 0, bl = 0;
  std::string suite;
  std::size_t jobs = 1;
  double scale = 1.0;
  bool text = false;
  bool check = false;
  bool timing = false;
};

struct Context {
  Options o;
  std::uint64_t seed = 0;
  Json results = Json::object();
  Json transcript = Json::array();
  std::vector<std::string> check_failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) check_failures.push_back(what);
  }
};

// A usage problem detected after parsing (missing flag for this command).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(const std::vector<std::string>& args, const Options& o) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& text) {
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& a : args) feed(a);
  if (!o.matroid.empty()) feed(read_file(o.matroid));
  if (!o.target.empty()) feed(read_file(o.target));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ElementSet to_set(const std::vector<std::string>& xs) {
  ElementSet out;
  for (const auto& x : xs) {
    if (!x.empty()) out.insert(x);
  }
  return out;
}

Json labels_json(const RepMatroid& m, const ElementSet& xs) { return m.ordered(m.mask_of(xs)); }

Json spec_json(const RepMatroid& m, const MinorSpec& spec) {
  Json j = Json::object();
  j["contract"] = labels_json(m, spec.contract);
  j["delete"] = labels_json(m, spec.remove);
  return j;
}

Json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

Json transcript_json(const RepMatroid& m, const std::vector<TranscriptEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json j = Json::object();
    j["event"] = e.event;
    if (e.element) j["element"] = *e.element;
    if (e.action) j["action"] = to_string(*e.action);
    if (e.kappa_before) j["kappa_before"] = *e.kappa_before;
    if (e.kappa_after) j["kappa_after"] = *e.kappa_after;
    if (e.witness) {
      // Witnesses may mention labels outside M (guts points); keep set order.
      Json w = Json::object();
      std::vector<Label> c;
      std::vector<Label> d;
      for (const auto& l : e.witness->contract) c.push_back(l);
      for (const auto& l : e.witness->remove) d.push_back(l);
      auto by_ground = [&](std::vector<Label>& v) {
        std::stable_sort(v.begin(), v.end(), [&](const Label& a, const Label& b) {
          const std::size_t ia = m.contains(a) ? m.index_of(a) : m.size();
          const std::size_t ib = m.contains(b) ? m.index_of(b) : m.size();
          return ia < ib;
        });
      };
      by_ground(c);
      by_ground(d);
      w["contract"] = c;
      w["delete"] = d;
      j["witness"] = w;
    }
    if (!e.note.empty()) j["note"] = e.note;
    out.push_back(std::move(j));
  }
  return out;
}

Json suite_json(const SuiteResult& r, bool timing) {
  Json j = Json::object();
  j["suite"] = r.name;
  j["passed"] = r.passed;
  j["instances"] = r.instances;
  j["violations"] = r.violations;
  j["failures"] = r.failures;
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = stats;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

void need(bool present, const std::string& what) {
  if (!present) throw UsageError(what);
}

RepMatroid load(const Context& c) {
  need(!c.o.matroid.empty(), "this command needs -m <file>");
  return read_matroid_file(c.o.matroid);
}

void need_terminals(const Context& c) {
  need(!c.o.s.empty() && !c.o.t.empty(), "this command needs -S and -T");
}

// ---------------------------------------------------------------- commands

void cmd_rank(Context& c) {
  const auto m = load(c);
  const Mask x = c.o.x.empty() ? m.ground() : m.mask_of(to_set(c.o.x));
  c.results["rank"] = m.rank(x);
}

void cmd_lambda(Context& c) {
  const auto m = load(c);
  need(!c.o.x.empty(), "lambda needs -X");
  c.results["lambda"] = lambda(m, to_set(c.o.x));
}

void cmd_kappa(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const std::size_t k = kappa_fast(m, s, t);
  c.results["kappa"] = k;
  c.results["method"] = "fast";
  const Mask mid = m.ground() & ~m.mask_of(s) & ~m.mask_of(t);
  const bool small = popcount(mid) <= 24;
  if (small) c.expect(kappa_bruteforce(m, s, t) == k, "kappa_fast disagrees with the brute-force oracle");
  c.results["oracle_checked"] = small;
}

void cmd_classify(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const std::size_t k = kappa_fast(m, s, t);
  std::vector<Label> which;
  if (!c.o.element.empty()) {
    which.push_back(c.o.element);
  } else {
    which = m.ordered(m.ground() & ~m.mask_of(s) & ~m.mask_of(t));
  }
  Json list = Json::array();
  for (const auto& e : which) {
    const auto cls = classify_element(m, s, t, e);
    Json j = Json::object();
    j["element"] = e;
    j["deletable"] = cls.deletable;
    j["contractible"] = cls.contractible;
    j["flexible"] = cls.flexible();
    list.push_back(j);
    if (c.o.check) {
      const ElementSet one{e};
      c.expect(cls.deletable == (kappa_bruteforce(minor(m, ElementSet{}, one), s, t) == k) &&
                   cls.contractible == (kappa_bruteforce(minor(m, one, ElementSet{}), s, t) == k),
               "classification of " + e + " disagrees with the brute-force oracle");
    }
  }
  c.results["kappa"] = k;
  c.results["elements"] = list;
  if (c.o.check) c.results["oracle_checked"] = true;
}

void cmd_certificate(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const auto cert = linking_certificate(m, s, t);
  c.results["kappa"] = kappa_fast(m, s, t);
  c.results["contract"] = labels_json(m, cert.contract);
  c.results["delete"] = labels_json(m, cert.remove);
  c.results["achieved"] = cert.achieved;
  if (c.o.check) {
    const auto n = minor(m, cert.contract, cert.remove);
    c.expect(lambda(n, s) == kappa_bruteforce(m, s, t), "certificate minor does not realize kappa");
    c.results["oracle_checked"] = true;
  }
}

void cmd_linked_subsets(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const auto [s2, t2] = linked_subsets(m, s, t);
  c.results["s"] = labels_json(m, s2);
  c.results["t"] = labels_json(m, t2);
  if (c.o.check) {
    const std::size_t k = kappa_bruteforce(m, s, t);
    c.expect(s2.size() == k && t2.size() == k && rank_of(m, s2) == k && rank_of(m, t2) == k &&
                 kappa_bruteforce(m, s2, t2) == k,
             "linked subsets fail the rank or connectivity check");
    c.results["oracle_checked"] = true;
  }
}

void cmd_min_sep(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  need(!c.o.element.empty(), "min-sep needs -e");
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const auto sep = min_separation_through(m, s, t, c.o.element);
  c.results["side_a"] = labels_json(m, sep.side_a);
  c.results["lambda"] = sep.order_minus_one;
  if (c.o.check) {
    // The answer must be contained in every separating set through e of the
    // same order.
    const Mask a = m.mask_of(sep.side_a);
    const Mask start = m.mask_of(s) | (Mask{1} << m.index_of(c.o.element));
    const Mask mid = m.ground() & ~start & ~m.mask_of(t);
    const std::size_t k = kappa_bruteforce(m, s, t);
    bool ok = m.lambda(a) == k;
    for (Mask y = mid;; y = (y - 1) & mid) {
      if (m.lambda(start | y) == k && (a & ~(start | y)) != 0) ok = false;
      if (y == 0) break;
    }
    c.expect(ok, "separation is not the least one through the element");
    c.results["oracle_checked"] = true;
  }
}

ElementSet default_f(const RepMatroid& m, const ElementSet& s, const ElementSet& t) {
  ElementSet f;
  for (const auto& e : m.ordered(m.ground() & ~m.mask_of(s) & ~m.mask_of(t))) {
    if (!classify_element(m, s, t, e).flexible()) f.insert(e);
  }
  return f;
}

Json nested_json(const RepMatroid& m, const NestedSeqResult& seq) {
  Json j = Json::object();
  j["order"] = seq.order;
  j["ordering"] = seq.ordering;
  Json sets = Json::array();
  for (const auto& a : seq.sets) sets.push_back(labels_json(m, a));
  j["sets"] = sets;
  Json kinds = Json::array();
  for (auto k : seq.kinds) kinds.push_back(to_string(k));
  j["kinds"] = kinds;
  return j;
}

void cmd_nested(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const ElementSet f = c.o.f.empty() ? default_f(m, s, t) : to_set(c.o.f);
  const auto seq = nested_sequence(m, s, t, f);
  c.results = nested_json(m, seq);
  if (c.o.check) {
    const auto problems = verify_nested(m, m.mask_of(s), m.mask_of(t), m.mask_of(f), to_masks(m, seq));
    for (const auto& p : problems) c.expect(false, p);
    c.results["oracle_checked"] = true;
  }
}

void cmd_excise(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  need(c.o.i > 0 && c.o.j > 0, "excise needs -i and -j");
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const ElementSet f = c.o.f.empty() ? default_f(m, s, t) : to_set(c.o.f);
  const auto seq = nested_sequence(m, s, t, f);
  const auto cert = linking_certificate(m, s, t);
  const auto out = excise_middle(m, s, t, seq, cert, c.o.i, c.o.j);
  c.results["sequence"] = nested_json(m, seq);
  c.results["certificate"] = spec_json(m, MinorSpec{cert.contract, cert.remove});
  c.results["matroid"] = serialize_matroid(out);
  if (c.o.check) {
    c.expect(kappa_bruteforce(out, s, t) == kappa_bruteforce(m, s, t), "excision changed kappa");
    c.results["oracle_checked"] = true;
  }
}

Json column_json(const std::vector<Scalar>& col) {
  Json j = Json::array();
  for (const auto& v : col) j.push_back(v.to_string());
  return j;
}

void cmd_pg_extend(Context& c) {
  const auto m = load(c);
  need(!c.o.x.empty(), "pg-extend needs -X (the A side)");
  const auto ext = extend_guts(m, make_separation(m, to_set(c.o.x)), c.o.prefix);
  c.results["lambda"] = ext.sep.order_minus_one;
  c.results["labels"] = ext.x;
  Json points = Json::array();
  for (std::size_t j = 0; j < ext.points.cols(); ++j) points.push_back(column_json(ext.points.column(j)));
  c.results["points"] = points;
  c.results["matroid"] = serialize_matroid(ext.extended);
}

void cmd_good_extend(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  const auto [ext, label] = good_extension(m, to_set(c.o.s), to_set(c.o.t), c.o.label);
  c.results["label"] = label;
  c.results["column"] = column_json(ext.matrix().column(ext.index_of(label)));
  c.results["matroid"] = serialize_matroid(ext);
}

Json advice_json(const RepMatroid& m, const RemovalAdvice& a) {
  Json j = Json::object();
  j["element"] = a.element;
  j["action"] = to_string(a.action);
  j["kappa"] = a.kappa;
  const auto after = a.action == Action::kDelete ? minor(m, ElementSet{}, ElementSet{a.element})
                                                 : minor(m, ElementSet{a.element}, ElementSet{});
  j["witness"] = spec_json(after, a.witness);
  return j;
}

bool advice_checks(const RepMatroid& m, const ElementSet& s, const ElementSet& t, const RepMatroid& n,
                   const RemovalAdvice& a) {
  const ElementSet one{a.element};
  const auto after = a.action == Action::kDelete ? minor(m, ElementSet{}, one) : minor(m, one, ElementSet{});
  return kappa_bruteforce(after, s, t) == kappa_bruteforce(m, s, t) &&
         same_matroid(minor(after, a.witness), n);
}

void cmd_find_removable(Context& c) {
  const auto m = load(c);
  need_terminals(c);
  need(!c.o.target.empty(), "find-removable needs -N <file>");
  const auto n = read_matroid_file(c.o.target);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  std::optional<RemovalAdvice> advice;
  c.results["method"] = c.o.method;
  if (c.o.method == "direct") {
    advice = find_removable_direct(m, s, t, n);
    c.results["status"] = advice ? "advice" : "none";
    if (advice) c.transcript = transcript_json(m, advice->transcript);
  } else {
    const auto res = find_removable_pigeonhole(m, s, t, n);
    advice = res.advice;
    c.results["status"] = to_string(res.status);
    c.results["dualized"] = res.dualized;
    c.results["sequence_length"] = res.sequence_length;
    c.results["thinned_length"] = res.thinned_length;
    c.transcript = transcript_json(m, res.transcript);
  }
  c.results["advice"] = advice ? advice_json(m, *advice) : Json(nullptr);
  if (c.o.check) {
    if (advice) c.expect(advice_checks(m, s, t, n, *advice), "advice fails the brute-force check");
    c.results["oracle_checked"] = true;
  }
}

void cmd_shrink(Context& c) {
  const auto m = load(c);
  need(!c.o.q.empty() && !c.o.r.empty() && !c.o.s.empty() && !c.o.t.empty(),
       "shrink needs -Q, -R, -S and -T");
  const auto q = to_set(c.o.q);
  const auto r = to_set(c.o.r);
  const auto s = to_set(c.o.s);
  const auto t = to_set(c.o.t);
  const auto res = shrink_intertwine(m, q, r, s, t);
  c.results["k"] = res.k;
  c.results["l"] = res.l;
  c.results["remaining"] = res.remaining;
  c.results["bound"] = big_json(res.bound);
  Json log = Json::array();
  for (const auto& step : res.log) {
    log.push_back(Json{{"element", step.element}, {"action", to_string(step.action)}});
  }
  c.results["log"] = log;
  c.results["matroid"] = serialize_matroid(res.result);
  if (c.o.check) {
    c.expect(removable_for_both(res.result, q, r, s, t).empty(), "result still has a removable element");
    c.expect(kappa_bruteforce(res.result, q, r) == res.k && kappa_bruteforce(res.result, s, t) == res.l,
             "result changed a connectivity");
    c.results["oracle_checked"] = true;
  }
}

void cmd_bounds(Context& c, const CLI::App& sub) {
  const bool minor_bound = sub.count("--q") && sub.count("--n");
  const bool conn_bound = sub.count("--k") && sub.count("--l");
  need(minor_bound || conn_bound, "bounds needs --q and --n, or --k and --l");
  if (minor_bound) c.results["c_minor"] = big_json(c_minor(c.o.bq, c.o.bn));
  if (conn_bound) c.results["c_conn"] = big_json(c_conn(c.o.bk, c.o.bl));
}

void cmd_dual(Context& c) {
  const auto m = load(c);
  c.results["matroid"] = serialize_matroid(dual(m));
}

void cmd_minor(Context& c) {
  const auto m = load(c);
  c.results["matroid"] = serialize_matroid(minor(m, to_set(c.o.contract), to_set(c.o.remove)));
}

void cmd_verify(Context& c) {
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.jobs = c.o.jobs;
  opt.scale = c.o.scale;
  std::vector<std::string> names;
  if (c.o.suite == "all") {
    names = suite_names();
    names.push_back("cli");
  } else {
    names.push_back(c.o.suite);
  }
  Json suites = Json::array();
  bool all_passed = true;
  for (const auto& name : names) {
    const auto res = name == "cli" ? run_cli_suite(opt) : run_suite(name, opt);
    all_passed = all_passed && res.passed;
    suites.push_back(suite_json(res, c.o.timing));
    if (!res.passed) c.check_failures.push_back("suite " + name + " reported violations");
  }
  c.results["seed"] = c.seed;
  c.results["passed"] = all_passed;
  c.results["suites"] = suites;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report["command"].get<std::string>() << "\n";
  if (report.contains("error")) {
    out << "error " << report["error"]["code"].get<std::string>() << ": "
        << report["error"]["message"].get<std::string>() << "\n";
    return out.str();
  }
  for (const auto& [key, value] : report["results"].items()) {
    if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
      out << key << ":\n" << value.get<std::string>();
    } else if (value.is_string()) {
      out << key << ": " << value.get<std::string>() << "\n";
    } else {
      out << key << ": " << value.dump() << "\n";
    }
  }
  if (!report["transcript"].empty()) {
    out << "transcript:\n";
    for (const auto& e : report["transcript"]) out << "  " << e.dump() << "\n";
  }
  return out.str();
}

std::uint64_t env_seed() {
  const char* v = std::getenv("MATLINK_SEED");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (*end != '\0') throw UsageError("MATLINK_SEED must be a non-negative integer");
  return s;
}

}  // namespace

CommandOutput run_command(const std::vector<std::string>& args) {
  CommandOutput result;
  Context c;
  Options& o = c.o;

  CLI::App app{"Exact matroid connectivity toolkit", "matlink"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--text", o.text, "print prose instead of JSON");
  app.add_flag("--check", o.check, "re-verify against brute-force oracles");
  app.add_flag("--timing", o.timing, "include wall-clock times (breaks reproducibility)");

  auto with_m = [&](CLI::App* sub) {
    sub->add_option("-m,--matroid", o.matroid, "matroid file")->check(CLI::ExistingFile);
    return sub;
  };
  auto set_opt = [&](CLI::App* sub, const std::string& name, std::vector<std::string>& into,
                     const std::string& help) { sub->add_option(name, into, help)->delimiter(','); };
  auto with_st = [&](CLI::App* sub) {
    set_opt(sub, "-S", o.s, "labels of S");
    set_opt(sub, "-T", o.t, "labels of T");
    return sub;
  };

  std::map<std::string, std::function<void()>> handlers;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    return sub;
  };

  auto* rank = with_m(add("rank", "rank of a set (default: the ground set)"));
  set_opt(rank, "-X", o.x, "labels");
  handlers["rank"] = [&] { cmd_rank(c); };

  auto* lam = with_m(add("lambda", "connectivity function of a set"));
  set_opt(lam, "-X", o.x, "labels");
  handlers["lambda"] = [&] { cmd_lambda(c); };

  with_st(with_m(add("kappa", "connectivity between S and T")));
  handlers["kappa"] = [&] { cmd_kappa(c); };

  auto* cls = with_st(with_m(add("classify", "deletable / contractible flags")));
  cls->add_option("-e", o.element, "single element");
  handlers["classify"] = [&] { cmd_classify(c); };

  with_st(with_m(add("certificate", "linking minor M/C\\D realizing kappa")));
  handlers["certificate"] = [&] { cmd_certificate(c); };

  with_st(with_m(add("linked-subsets", "independent S' and T' with kappa(S',T') = |S'|")));
  handlers["linked-subsets"] = [&] { cmd_linked_subsets(c); };

  auto* ms = with_st(with_m(add("min-sep", "least S-T separating set through an element")));
  ms->add_option("-e", o.element, "element");
  handlers["min-sep"] = [&] { cmd_min_sep(c); };

  auto* nest = with_st(with_m(add("nested", "nested sequence of separations")));
  set_opt(nest, "-F", o.f, "labels of F (default: every non-flexible element)");
  handlers["nested"] = [&] { cmd_nested(c); };

  auto* ex = with_st(with_m(add("excise", "contract/delete between two nested separations")));
  set_opt(ex, "-F", o.f, "labels of F (default: every non-flexible element)");
  ex->add_option("-i", o.i, "first index (1-based)");
  ex->add_option("-j", o.j, "second index (1-based)");
  handlers["excise"] = [&] { cmd_excise(c); };

  auto* pg = with_m(add("pg-extend", "add the projective geometry on the guts of (X, E-X)"));
  set_opt(pg, "-X", o.x, "the A side");
  pg->add_option("--prefix", o.prefix, "prefix for new labels");
  handlers["pg-extend"] = [&] { cmd_pg_extend(c); };

  auto* good = with_st(with_m(add("good-extend", "add a point on cl(S) ∩ cl(T)")));
  good->add_option("--label", o.label, "label of the new point");
  handlers["good-extend"] = [&] { cmd_good_extend(c); };

  auto* fr = with_st(with_m(add("find-removable", "element whose removal keeps kappa and the minor N")));
  fr->add_option("-N", o.target, "minor file")->check(CLI::ExistingFile);
  fr->add_option("--method", o.method, "direct or pigeonhole")
      ->check(CLI::IsMember({"direct", "pigeonhole"}));
  handlers["find-removable"] = [&] { cmd_find_removable(c); };

  auto* sh = with_st(with_m(add("shrink", "remove elements keeping kappa(Q,R) and kappa(S,T)")));
  set_opt(sh, "-Q", o.q, "labels of Q");
  set_opt(sh, "-R", o.r, "labels of R");
  handlers["shrink"] = [&] { cmd_shrink(c); };

  auto* bd = add("bounds", "size bounds for removable elements");
  bd->add_option("--q", o.bq, "field order");
  bd->add_option("--n", o.bn, "size of N");
  bd->add_option("--k", o.bk, "kappa(Q,R)");
  bd->add_option("--l", o.bl, "kappa(S,T)");
  handlers["bounds"] = [&] { cmd_bounds(c, *bd); };

  with_m(add("dual", "dual matroid"));
  handlers["dual"] = [&] { cmd_dual(c); };

  auto* mn = with_m(add("minor", "M / C \\ D"));
  set_opt(mn, "--contract", o.contract, "labels to contract");
  set_opt(mn, "--delete", o.remove, "labels to delete");
  handlers["minor"] = [&] { cmd_minor(c); };

  auto* vf = add("verify", "run a verification suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("cli");
  suites.push_back("all");
  vf->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(suites));
  vf->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  vf->add_option("--scale", o.scale, "instance count multiplier")->check(CLI::PositiveNumber);
  handlers["verify"] = [&] { cmd_verify(c); };

  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Json report = Json::object();
  report["schema"] = 1;
  report["command"] = command;
  report["argv"] = args;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.seed = env_seed();
    report["inputs_digest"] = digest(args, o);
    handlers.at(command)();
    report["results"] = c.results;
    report["transcript"] = c.transcript;
    if (!c.check_failures.empty()) {
      report["check_failures"] = c.check_failures;
      result.exit_code = kExitVerification;
    }
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("matlink ") + command + ": " + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    report.erase("results");
    report.erase("transcript");
    report["error"] = Json{{"code", to_string(e.code())}, {"message", e.what()}};
    result.exit_code = e.code() == ErrorCode::kInternal ? kExitVerification : kExitComputation;
  }
  if (o.timing) {
    report["timing"] = Json{
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  }
  result.out = o.text ? render_text(report) : report.dump(2) + "\n";
  return result;
}

// ---------------------------------------------------------------- cli suite

namespace {

RepMatroid random_any(std::mt19937_64& rng) {
  static const char* kFields[] = {"gf(2)", "gf(3)", "gf(4)", "gf(5)", "gf(8)", "gf(9)", "rationals"};
  const auto field = parse_field(kFields[rng() % 7]);
  const std::size_t r = 1 + rng() % 4;
  const std::size_t n = 1 + rng() % 7;
  Matrix a(field, r, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (field->is_finite()) {
        a.set_code(i, j, static_cast<std::uint32_t>(rng() % field->order()));
      } else {
        const long long num = static_cast<long long>(rng() % 19) - 9;
        const long long den = 1 + static_cast<long long>(rng() % 6);
        a.set(i, j, Scalar(field, Rational(num, den)));
      }
    }
  }
  std::vector<Label> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back("x" + std::to_string(j) + (j % 2 ? "'" : ""));
  return RepMatroid(a, labels);
}

}  // namespace

SuiteResult run_cli_suite(const SuiteOptions& options) {
  const std::size_t round_trips = std::max<std::size_t>(1, static_cast<std::size_t>(200 * options.scale));
  const auto dir = std::filesystem::temp_directory_path() /
                   ("matlink-cli-" + std::to_string(instance_seed(options.seed, "cli", 0)));
  std::filesystem::create_directories(dir);
  const std::string mfile = (dir / "m.mat").string();
  const std::string nfile = (dir / "n.mat").string();
  {
    std::ofstream(mfile) << "field gf(2)\nlabels s f1 f2 f3 t\nrows 1\n1 1 1 1 1\n";
    std::ofstream(nfile) << "field gf(2)\nlabels s t\nrows 1\n1 1\n";
  }
  const std::vector<std::vector<std::string>> commands = {
      {"rank", "-m", mfile},
      {"kappa", "-m", mfile, "-S", "s", "-T", "t"},
      {"classify", "--check", "-m", mfile, "-S", "s", "-T", "t"},
      {"certificate", "--check", "-m", mfile, "-S", "s", "-T", "t"},
      {"nested", "--check", "-m", mfile, "-S", "s", "-T", "t"},
      {"find-removable", "--check", "-m", mfile, "-S", "s", "-T", "t", "-N", nfile, "--method", "pigeonhole"},
      {"shrink", "--check", "-m", mfile, "-Q", "s", "-R", "t", "-S", "s", "-T", "t"},
      {"bounds", "--q", "2", "--n", "2", "--k", "1"},
      {"verify", "fields", "--scale", "0.01", "--jobs", "1"},
  };

  auto res = run_instances("cli", round_trips + commands.size() + 1, 1, [&](std::size_t i) {
    InstanceOutcome out;
    if (i < round_trips) {
      std::mt19937_64 rng(instance_seed(options.seed, "cli", i));
      const auto m = random_any(rng);
      const std::string text = serialize_matroid(m);
      const auto back = parse_matroid(text);
      if (!(back.matrix() == m.matrix()) || back.labels() != m.labels() ||
          !(*back.field() == *m.field())) {
        out.fail("parse(serialize(M)) differs from M");
      }
      if (serialize_matroid(back) != text) out.fail("serialization is not canonical");
      out.count("round_trips");
      return out;
    }
    if (i < round_trips + commands.size()) {
      const auto& cmd = commands[i - round_trips];
      const auto first = run_command(cmd);
      const auto second = run_command(cmd);
      if (first.exit_code != kExitOk) out.fail(cmd[0] + " exited with " + std::to_string(first.exit_code));
      if (first.out != second.out) out.fail(cmd[0] + " output differs between runs");
      const auto parsed = Json::parse(first.out, nullptr, false);
      if (parsed.is_discarded() || parsed.value("schema", 0) != 1) out.fail(cmd[0] + " report is malformed");
      out.count("commands");
      return out;
    }
    // Thread count must not change a suite report.
    const auto one = run_command({"verify", "nested", "--scale", "0.02", "--jobs", "1"});
    const auto three = run_command({"verify", "nested", "--scale", "0.02", "--jobs", "3"});
    auto strip = [](const std::string& text) {
      auto j = Json::parse(text);
      j.erase("argv");
      j.erase("inputs_digest");
      return j.dump();
    };
    if (one.exit_code != kExitOk || strip(one.out) != strip(three.out)) {
      out.fail("suite report depends on --jobs");
    }
    out.count("jobs_comparisons");
    return out;
  });
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  return res;
}

}  // namespace matlink
