// Copyright 2026 The gasmip Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = GASMIP_CLI_PATH;
const std::string kToy = std::string(GASMIP_DATA_DIR) + "/toy2.gas";

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult Exec(const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gasmip_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, SolveToyInstance) {
  const CliResult r = Exec("solve --instance '" + kToy + "' --deterministic --csv '" + Path("sol.csv") + "'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("status: optimal"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("max_gas_balance_residual"), std::string::npos);
  EXPECT_EQ(Read("sol.csv").rfind("k,kind,entity,value", 0), 0u);
}

TEST_F(CliTest, DeterministicReportsAreIdentical) {
  const CliResult a = Exec("solve --instance '" + kToy + "' --method sos2 --deterministic");
  const CliResult b = Exec("solve --instance '" + kToy + "' --method sos2 --deterministic");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, InfeasibleInstanceExitsWithTwo) {
  std::ofstream(Path("bad.gas")) << R"([system]
name = bad
horizon = 1

[nodes]
id, p_min, p_max
n1, 40, 50
n2, 90, 100

[compressors]
id, from, to, ratio, capacity, consumption
c1, n1, n2, 1.5, 100, 0

[sources]
id, node, cost, capacity
s1, n1, 10, 100

[demand_gas]
k, n1, n2
1, 0, 5
)";
  const CliResult r = Exec("solve --instance '" + Path("bad.gas") + "'");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("infeasible"), std::string::npos) << r.out;
}

TEST_F(CliTest, NodeLimitExitsWithThree) {
  const CliResult r = Exec("solve --instance '" + kToy + "' --method inc --node-limit 1 --gap 0");
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST_F(CliTest, ConfigurationErrorsExitWithFour) {
  EXPECT_EQ(Exec("solve --instance /nonexistent/x.gas").code, 4);
  EXPECT_EQ(Exec("solve").code, 4);
  EXPECT_EQ(Exec("solve --instance '" + kToy + "' --method pwl").code, 4);
  EXPECT_EQ(Exec("tightness --segments 1").code, 4);
  std::ofstream(Path("broken.gas")) << "[system]\nhorizon\n";
  const CliResult r = Exec("solve --instance '" + Path("broken.gas") + "'");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
}

TEST_F(CliTest, PrecomputedCacheIsUsed) {
  const CliResult pre = Exec("precompute --instance '" + kToy + "' --segments 5 --out '" + Path("z.json") +
                       "' --deterministic");
  ASSERT_EQ(pre.code, 0) << pre.out;
  ASSERT_TRUE(fs::exists(Path("z.json")));
  const CliResult with = Exec("solve --instance '" + kToy + "' --segments 5 --deterministic --cache '" + Path("z.json") + "'");
  const CliResult without = Exec("solve --instance '" + kToy + "' --segments 5 --deterministic");
  EXPECT_EQ(with.code, 0) << with.out;
  EXPECT_EQ(with.out, without.out);
}

TEST_F(CliTest, TightnessQualityStatsAndMps) {
  const CliResult t = Exec("tightness --method z --segments 3 --deterministic");
  EXPECT_EQ(t.code, 0) << t.out;
  EXPECT_NE(t.out.find("z"), std::string::npos);
  const CliResult q = Exec("quality --samples 10 --out '" + Path("q.csv") + "'");
  EXPECT_EQ(q.code, 0) << q.out;
  EXPECT_EQ(Read("q.csv").rfind("dp,p_sum,feasible,exact_flow,z_flow,pwl_flow", 0), 0u);
  const CliResult s = Exec("stats --segments 5 --flow-segments 10");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("inc"), std::string::npos);
  const CliResult m = Exec("export-mps --instance '" + kToy + "' --out '" + Path("toy.mps") + "'");
  EXPECT_EQ(m.code, 0) << m.out;
  const std::string mps = Read("toy.mps");
  EXPECT_NE(mps.find("ROWS"), std::string::npos);
  EXPECT_NE(mps.find("ENDATA"), std::string::npos);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const CliResult r = Exec("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("benchmark"), std::string::npos);
}

}  // namespace
