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


// Command dispatch for the matlink executable. Every command produces a JSON
// report; the same entry point backs the executable and the tests.

#ifndef MATLINK_CLI_HPP_
#define MATLINK_CLI_HPP_

#include <string>
#include <vector>

#include "matlink/verify.hpp"

namespace matlink {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitVerification = 3;

struct CommandOutput {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

// args excludes the program name. MATLINK_SEED is read from the environment.
CommandOutput run_command(const std::vector<std::string>& args);

// Round trips and report reproducibility, run as `verify cli`.
SuiteResult run_cli_suite(const SuiteOptions& options);

}  // namespace matlink

#endif  // MATLINK_CLI_HPP_
