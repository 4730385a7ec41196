// Copyright 2026 The dsapf Authors
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

#include <cli.hpp>

#include <dsapf/metrics_io.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dsapf::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dsa_pf");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in{path, std::ios::binary};
  return {std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

int count_prefix(const std::string& text, const std::string& prefix) {
  int n = 0;
  std::istringstream lines{text};
  for (std::string line; std::getline(lines, line);) {
    n += line.rfind(prefix, 0) == 0;
  }
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string{"dsapf_cli_"} + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path scenario(const std::string& text) {
    const auto path = dir_ / "scenario.cfg";
    std::ofstream{path} << text;
    return path;
  }

  fs::path dir_;
};

TEST(ExpandValues, ListsAndRanges) {
  EXPECT_EQ(expand_values("2,5,10"), (std::vector<std::string>{"2", "5", "10"}));
  EXPECT_EQ(expand_values("1..4"), (std::vector<std::string>{"1", "2", "3", "4"}));
  EXPECT_EQ(expand_values("sum, maxmin"), (std::vector<std::string>{"sum", "maxmin"}));
}

TEST_F(Cli, MissingConfigIsIoError) {
  const auto missing = (dir_ / "nope.cfg").string();
  const auto result = invoke({"run", "--config", missing, "--out", (dir_ / "out").string()});
  EXPECT_EQ(result.code, kExitIo);
  EXPECT_NE(result.err.find(missing), std::string::npos);
}

TEST_F(Cli, InvalidConfigIsConfigError) {
  const auto result = invoke({"run", "--config", scenario("max_bands_per_user = 99\n").string()});
  EXPECT_EQ(result.code, kExitConfig);
  EXPECT_NE(result.err.find("max_bands_per_user"), std::string::npos);
  EXPECT_EQ(invoke({"run", "--bogus-flag"}).code, kExitConfig);
}

TEST_F(Cli, EmptyConfigRunsDefaults) {
  const auto out = dir_ / "out";
  const auto result = invoke({"run", "--config", scenario("").string(), "--seed", "1", "--out", out.string()});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_EQ(count_prefix(result.out, "command=run seed=1 objective=intrinsic n_users=200 n_bands=15"), 1);
  const auto rows = read_slots_csv(out / kSlotsFileName);
  EXPECT_EQ(rows.size(), 100U);
  EXPECT_EQ(rows[0].messages, 200U * 199U);
}

TEST_F(Cli, RepeatedRunIsIdentical) {
  const auto config = scenario("n_users = 8\nn_bands = 4\nn_slots = 20\npu_busy_prob = 0.25\n").string();
  const auto a = invoke({"run", "--config", config, "--seed", "3", "--out", (dir_ / "a").string()});
  const auto b = invoke({"run", "--config", config, "--seed", "3", "--out", (dir_ / "b").string()});
  ASSERT_EQ(a.code, kExitOk);
  ASSERT_EQ(b.code, kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / kSlotsFileName), slurp(dir_ / "b" / kSlotsFileName));
  EXPECT_EQ(slurp(dir_ / "a" / kSummaryFileName), slurp(dir_ / "b" / kSummaryFileName));
}

TEST_F(Cli, EnvironmentOverridesDefaultOut) {
  const auto out = dir_ / "from_env";
  ::setenv("DSA_PF_OUT", out.c_str(), 1);
  const auto result = invoke({"run", "--config", scenario("n_users = 3\nn_bands = 2\nn_slots = 3\n").string()});
  ::unsetenv("DSA_PF_OUT");
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_TRUE(fs::exists(out / kSlotsFileName));
}

TEST_F(Cli, SweepParticleCounts) {
  const auto config = scenario("n_users = 6\nn_bands = 3\nn_slots = 5\n").string();
  const auto out = dir_ / "sweep";
  const auto result = invoke({"sweep", "--config", config, "--param", "n_particles", "--values", "2,5,10,20,50",
                              "--seeds", "1,2", "--out", out.string(), "--jobs", "2"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = read_sweep_csv(out / kSweepFileName);
  EXPECT_EQ(rows.size(), 15U);
  EXPECT_EQ(count_prefix(result.out, "parameter=n_particles"), 15);
  EXPECT_EQ(count_prefix(result.out, "command=sweep cells=10"), 1);
  EXPECT_TRUE(fs::exists(out / "n_particles-20" / "seed-2" / kSummaryFileName));
}

TEST_F(Cli, SweepObjectives) {
  const auto config = scenario("n_users = 6\nn_bands = 3\nn_slots = 5\n").string();
  const auto result = invoke({"sweep", "--config", config, "--param", "objective", "--values",
                              "sum,maxmin,proportional_fair", "--out", (dir_ / "obj").string()});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_EQ(count_prefix(result.out, "parameter=objective"), 9);
}

TEST_F(Cli, SweepRangeOfBandsPerUser) {
  const auto config = scenario("n_users = 4\nn_bands = 8\nn_slots = 3\n").string();
  const auto result = invoke({"sweep", "--config", config, "--param", "max_bands_per_user", "--values", "1..6",
                              "--out", (dir_ / "ell").string()});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_EQ(count_prefix(result.out, "parameter=max_bands_per_user"), 18);
}

TEST_F(Cli, SweepUnknownParameterListsNames) {
  const auto result = invoke({"sweep", "--param", "n_widgets", "--values", "1,2", "--out", dir_.string()});
  EXPECT_EQ(result.code, kExitConfig);
  EXPECT_NE(result.err.find("n_particles"), std::string::npos);
  EXPECT_NE(result.err.find("pu_busy_prob"), std::string::npos);
}

TEST_F(Cli, OracleCheckRefusesLargeInstance) {
  const auto result = invoke({"oracle-check", "--config", scenario("n_users = 7\nn_bands = 3\n").string()});
  EXPECT_EQ(result.code, kExitConfig);
  EXPECT_NE(result.err.find("N=7"), std::string::npos);
}

TEST_F(Cli, OracleCheckSingleUserReachesOptimum) {
  const auto config = scenario("n_users = 1\nn_bands = 3\ndoppler_coherence_product = 0\nobjective = sum\n");
  const auto result = invoke({"oracle-check", "--config", config.string(), "--slots", "20"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_EQ(count_prefix(result.out, "slot="), 20);
  EXPECT_NE(result.out.find("final_ratio=1\n"), std::string::npos) << result.out;
}

}  // namespace
}  // namespace dsapf::cli
