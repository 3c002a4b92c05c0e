// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GHZSIM_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(GHZSIM_FIXTURE_DIR) + "/" + name; }

TEST(CliTest, VerifyTable1Passes) {
  CliResult r = run_cli("verify-table1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("16/16 rows: corrected fidelity 1.000000000000"), std::string::npos)
      << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliTest, VerifyStatesAndEntanglementPass) {
  EXPECT_EQ(run_cli("verify-states").exit_code, 0);
  CliResult ent = run_cli("analyze-entanglement");
  EXPECT_EQ(ent.exit_code, 0);
  EXPECT_EQ(run_cli("verify-entanglement --json").exit_code, 0);
}

TEST(CliTest, RunReportsEveryPattern) {
  CliResult r = run_cli("run --builtin fig3");
  ASSERT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["entries"].size(), 4u);
  EXPECT_NEAR(j["min_fidelity"].get<double>(), 1.0, 1e-12);
}

TEST(CliTest, RunGhzpsFromFixture) {
  CliResult r = run_cli("run --network " + fixture("fig1.onet"));
  ASSERT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["branches"].size(), 2u);
}

TEST(CliTest, CorrectableAndUncorrectableNoise) {
  EXPECT_EQ(run_cli("run --builtin fig3 --noise X@1,X@3").exit_code, 0);
  EXPECT_EQ(run_cli("run --builtin fig3 --noise Z@2").exit_code, 0);
  // A lone flip on the first photon leaves the family set on one branch.
  EXPECT_EQ(run_cli("run --builtin fig3 --noise X@1").exit_code, 1);
}

TEST(CliTest, SampledRunIsDeterministic) {
  CliResult a = run_cli("run --builtin fig3 --seed 7 --sample");
  CliResult b = run_cli("run --builtin fig3 --seed 7 --sample");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"sample\""), std::string::npos);
}

TEST(CliTest, SweepPrintsOneRowPerProbability) {
  CliResult r = run_cli("sweep-noise --p 0,0.1");
  EXPECT_NE(r.out.find("0.927644"), std::string::npos) << r.out;
}

TEST(CliTest, ParseFixtures) {
  CliResult r = run_cli("parse " + fixture("fig3.onet") + " --json");
  ASSERT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["detectors"].size(), 7u);
  EXPECT_EQ(run_cli("parse " + fixture("fig1.onet")).exit_code, 0);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(run_cli("run --builtin fig9").exit_code, 2);
  EXPECT_EQ(run_cli("run --builtin fig1 --network " + fixture("fig1.onet")).exit_code, 2);
  EXPECT_EQ(run_cli("run --alpha -3").exit_code, 2);
  EXPECT_EQ(run_cli("run --noise Q@1").exit_code, 2);
  EXPECT_EQ(run_cli("run --weights 0.5,0.6,0.1").exit_code, 2);
  EXPECT_EQ(run_cli("parse /nonexistent/net.onet").exit_code, 2);
  EXPECT_EQ(run_cli("sweep-noise --builtin fig1").exit_code, 2);
}

TEST(CliTest, MalformedNetworkExitsTwo) {
  const std::string path = testing::TempDir() + "bad.onet";
  std::ofstream(path) << "input a\nroute a -> b\nroute a -> c\n";
  EXPECT_EQ(run_cli("parse " + path).exit_code, 2);
}

}  // namespace
