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


// Randomized and exhaustive verification suites. Each suite enumerates
// independent instances, checks them against oracles built from the rank
// function alone, and aggregates results in instance order so the outcome
// does not depend on the number of worker threads.

#ifndef MATLINK_VERIFY_HPP_
#define MATLINK_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "matlink/matroid.hpp"

namespace matlink {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  // Multiplies every instance count (corpus sizes included). Values below 1
  // give quick smoke runs.
  double scale = 1.0;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<std::string> failures;  // the first few, "#<instance>: <what>"
  std::map<std::string, std::uint64_t> stats;
  double seconds = 0;
};

// One instance's contribution to a suite.
struct InstanceOutcome {
  std::vector<std::string> failures;
  std::map<std::string, std::uint64_t> counts;

  void fail(std::string what) { failures.push_back(std::move(what)); }
  void count(const std::string& key, std::uint64_t by = 1) { counts[key] += by; }
};

using InstanceFn = std::function<InstanceOutcome(std::size_t index)>;

// Runs fn on 0..count-1 with `jobs` threads and folds the outcomes in index
// order. Exceptions escaping fn are recorded as failures of that instance.
SuiteResult run_instances(const std::string& name, std::size_t count, std::size_t jobs,
                          const InstanceFn& fn);

// Per-instance generator seed derived from (seed, suite, index).
std::uint64_t instance_seed(std::uint64_t seed, const std::string& suite, std::size_t index);

std::vector<std::string> suite_names();

// Throws Error(kInvalidSpec) for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// All GF(2) matrices in reduced row echelon form with exactly r nonzero rows,
// r <= max_rank, 1 <= n <= max_n; one representation per simple-labeled
// binary matroid of that size. Rank 0 is represented by a zero row.
std::vector<RepMatroid> binary_corpus(std::size_t max_rank, std::size_t max_n);

// Instances of the pigeonhole suite: rank about n/2 matrices whose columns are
// supported on a sliding window of rows, S = {e0}, T = {e_last}, and N a
// minor on at most three labels. Half of them take N from the complement of
// the linking certificate, which forces the collision route.
struct ChainInstance {
  RepMatroid m;
  ElementSet s;
  ElementSet t;
  RepMatroid n;
};
ChainInstance chain_instance(std::uint64_t seed);

}  // namespace matlink

#endif  // MATLINK_VERIFY_HPP_
