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


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "matlink/cli.hpp"

namespace matlink {
namespace {

using nlohmann::json;

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kU24 = "field gf(3)\nlabels a b c d\nrows 2\n1 0 1 1\n0 1 1 2\n";

}  // namespace

TEST_CASE("bounds command") {
  const auto out = run_command({"bounds", "--q", "2", "--n", "2", "--k", "1"});
  REQUIRE(out.exit_code == kExitOk);
  const auto j = json::parse(out.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "bounds");
  CHECK(j["results"]["c_minor"] == 98);
  CHECK(j["transcript"].is_array());
  CHECK(!j.contains("timing"));

  // c(k,l) = 4^(k+l).
  const auto conn = json::parse(run_command({"bounds", "--k", "2", "--l", "1"}).out);
  CHECK(conn["results"]["c_conn"] == 64);
}

TEST_CASE("rank, lambda and kappa on U(2,4)") {
  const auto file = write_temp("matlink_cli_u24.mat", kU24);
  auto j = json::parse(run_command({"rank", "-m", file, "-X", "a,b,c"}).out);
  CHECK(j["results"]["rank"] == 2);
  j = json::parse(run_command({"lambda", "-m", file, "-X", "a,b"}).out);
  CHECK(j["results"]["lambda"] == 2);
  j = json::parse(run_command({"kappa", "-m", file, "-S", "a", "-T", "b"}).out);
  CHECK(j["results"]["kappa"] == 1);
  CHECK(j["results"]["oracle_checked"] == true);

  // Same file, same arguments, same bytes.
  const auto a = run_command({"classify", "-m", file, "-S", "a", "-T", "b"});
  const auto b = run_command({"classify", "-m", file, "-S", "a", "-T", "b"});
  CHECK(a.out == b.out);
  std::remove(file.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run_command({}).exit_code == kExitUsage);
  CHECK(run_command({"no-such-command"}).exit_code == kExitUsage);
  CHECK(run_command({"rank"}).exit_code == kExitUsage);
  CHECK(run_command({"rank", "-m", "/nonexistent/file.mat"}).exit_code == kExitUsage);

  const auto file = write_temp("matlink_cli_dup.mat", "field gf(2)\nlabels a a\nrows 1\n1 1\n");
  const auto dup = run_command({"rank", "-m", file});
  CHECK(dup.exit_code == kExitComputation);
  const auto j = json::parse(dup.out);
  CHECK(j["error"]["code"] == "DuplicateLabel");
  CHECK(!j.contains("results"));
  std::remove(file.c_str());

  const auto u24 = write_temp("matlink_cli_u24b.mat", kU24);
  CHECK(run_command({"rank", "-m", u24, "-X", "z"}).exit_code == kExitComputation);
  std::remove(u24.c_str());
}

TEST_CASE("text output") {
  const auto out = run_command({"--text", "bounds", "--q", "2", "--n", "2"});
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.out.find("c_minor: 98") != std::string::npos);
}

TEST_CASE("cli suite passes at small scale") {
  SuiteOptions opt;
  opt.scale = 0.05;
  const auto res = run_cli_suite(opt);
  for (const auto& f : res.failures) MESSAGE(f);
  CHECK(res.passed);
}

}  // namespace matlink
