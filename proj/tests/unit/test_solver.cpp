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

#include <cmath>
#include <random>

#include "gasmip/external_solver.hpp"
#include "gasmip/lp.hpp"
#include "gasmip/mip.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

double RelDiff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

MipModel Textbook() {
  // min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18, x, y >= 0.
  MipModel m("textbook");
  const VarId x = m.add_continuous(VarLabel{"x", {}});
  const VarId y = m.add_continuous(VarLabel{"y", {}});
  m.add_constraint(LinearExpr(x), Sense::kLessEqual, 4, "c");
  m.add_constraint(LinearExpr(y, 2), Sense::kLessEqual, 12, "c");
  m.add_constraint(LinearExpr(x, 3) + LinearExpr(y, 2), Sense::kLessEqual, 18, "c");
  m.set_objective(LinearExpr(x, -3) + LinearExpr(y, -5));
  return m;
}

MipModel Knapsack() {
  const int value[] = {15, 10, 9, 5, 12, 7, 8, 11, 6, 14};
  const int weight[] = {1, 5, 3, 4, 6, 3, 2, 7, 2, 9};
  MipModel m("knapsack");
  LinearExpr cap;
  LinearExpr obj;
  for (int i = 0; i < 10; ++i) {
    const VarId v = m.add_binary(VarLabel{"x", {std::to_string(i)}});
    cap.add(v, weight[i]);
    obj.add(v, -value[i]);
  }
  m.add_constraint(cap, Sense::kLessEqual, 20, "cap");
  m.set_objective(obj);
  return m;
}

MipOptions Exact() {
  MipOptions opt;
  opt.rel_gap = 1e-9;
  return opt;
}

TEST(Lp, TextbookOptimumAndDuals) {
  const LpSolution s = solve_lp(Textbook());
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -36.0, 1e-9);
  EXPECT_NEAR(s.x[0], 2.0, 1e-9);
  EXPECT_NEAR(s.x[1], 6.0, 1e-9);
  ASSERT_EQ(s.duals.size(), 3u);
  EXPECT_NEAR(s.duals[0], 0.0, 1e-9);
  EXPECT_NEAR(s.duals[1], -1.5, 1e-9);
  EXPECT_NEAR(s.duals[2], -1.0, 1e-9);
}

TEST(Lp, InfeasibleAndUnbounded) {
  MipModel inf;
  const VarId x = inf.add_continuous(VarLabel{"x", {}}, Rational(0), Rational(1));
  const VarId y = inf.add_continuous(VarLabel{"y", {}}, Rational(0), Rational(1));
  inf.add_constraint(LinearExpr(x) + LinearExpr(y), Sense::kGreaterEqual, 5, "c");
  EXPECT_EQ(solve_lp(inf).status, LpStatus::kInfeasible);
  EXPECT_EQ(solve_mip(inf).status, MipStatus::kInfeasible);

  MipModel unb;
  const VarId u = unb.add_continuous(VarLabel{"u", {}}, std::nullopt, std::nullopt);
  const VarId w = unb.add_continuous(VarLabel{"w", {}});
  unb.add_constraint(LinearExpr(u) - LinearExpr(w), Sense::kLessEqual, 1, "c");
  unb.set_objective(LinearExpr(u, -1) + LinearExpr(w, -1));
  EXPECT_EQ(solve_lp(unb).status, LpStatus::kUnbounded);
  EXPECT_EQ(solve_mip(unb).status, MipStatus::kUnbounded);
}

TEST(Lp, WarmStartReproducesOptimum) {
  std::mt19937 rng(12);
  for (int i = 0; i < 10; ++i) {
    const MipModel m = testing::random_lp(rng, 8, 10);
    const LpProblem p = to_lp_problem(m);
    const LpSolution cold = solve_lp(p);
    ASSERT_EQ(cold.status, LpStatus::kOptimal);
    const LpSolution warm = solve_lp(p, {}, &cold.basis);
    ASSERT_EQ(warm.status, LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * (1 + std::abs(cold.objective)));
    EXPECT_LE(warm.iterations, 1);
    EXPECT_LE(max_violation(p, cold.x), 1e-9);
  }
}

TEST(Lp, ObjectiveConstantIsIncluded) {
  MipModel m = Textbook();
  LinearExpr obj = LinearExpr(VarId{0}, -3) + LinearExpr(VarId{1}, -5);
  obj.add_constant(100);
  m.set_objective(obj);
  EXPECT_NEAR(solve_lp(m).objective, 64.0, 1e-9);
  EXPECT_NEAR(solve_mip(m).objective, 64.0, 1e-9);
}

TEST(Mip, MatchesExhaustiveEnumerationOnRandomBinaryMips) {
  std::mt19937 rng(1234);
  int infeasible = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + i % 9;  // 4..12 binaries
    const MipModel m = testing::random_binary_mip(rng, n, 2 + i % 5);
    const std::optional<double> expected = testing::exhaustive_binary_optimum(m);
    const MipSolution s = solve_mip(m, Exact());
    if (!expected) {
      ++infeasible;
      EXPECT_EQ(s.status, MipStatus::kInfeasible) << "case " << i;
      continue;
    }
    ASSERT_EQ(s.status, MipStatus::kOptimal) << "case " << i;
    EXPECT_NEAR(s.objective, *expected, 1e-6) << "case " << i;
    EXPECT_TRUE(is_mip_feasible_pattern(m, s.x, 1e-6));
  }
  EXPECT_LT(infeasible, 50);
}

TEST(Mip, KnapsackOptimum) {
  const MipModel m = Knapsack();
  const MipSolution s = solve_mip(m, Exact());
  ASSERT_EQ(s.status, MipStatus::kOptimal);
  EXPECT_NEAR(s.objective, *testing::exhaustive_binary_optimum(m), 1e-9);
  for (double v : s.x) EXPECT_TRUE(std::abs(v) < 1e-9 || std::abs(v - 1) < 1e-9);
}

TEST(Mip, ContinuousModelEqualsLp) {
  std::mt19937 rng(8);
  for (int i = 0; i < 10; ++i) {
    const MipModel m = testing::random_lp(rng, 6, 8);
    const LpSolution lp = solve_lp(m);
    const MipSolution mip = solve_mip(m, Exact());
    ASSERT_EQ(mip.status, MipStatus::kOptimal);
    EXPECT_NEAR(mip.objective, lp.objective, 1e-9 * (1 + std::abs(lp.objective)));
    EXPECT_EQ(mip.nodes, 1);
  }
}

TEST(Mip, BestBoundIsMonotoneAndBelowIncumbent) {
  std::mt19937 rng(55);
  for (int i = 0; i < 10; ++i) {
    const MipModel m = testing::random_binary_mip(rng, 12, 6);
    MipOptions opt = Exact();
    opt.record_trace = true;
    const MipSolution s = solve_mip(m, opt);
    for (size_t t = 1; t < s.trace.size(); ++t) {
      EXPECT_GE(s.trace[t].best_bound, s.trace[t - 1].best_bound - 1e-9);
      EXPECT_LE(s.trace[t].incumbent, s.trace[t - 1].incumbent + 1e-9);
    }
    for (const MipTracePoint& p : s.trace) EXPECT_LE(p.best_bound, p.incumbent + 1e-9);
  }
}

TEST(Mip, Sos2BranchingEnforcesAdjacency) {
  MipModel m;
  std::vector<VarId> l;
  LinearExpr conv;
  LinearExpr pos;
  for (int i = 0; i < 4; ++i) {
    l.push_back(m.add_continuous(VarLabel{"l", {std::to_string(i)}}, Rational(0), Rational(1)));
    conv.add(l.back(), 1);
    pos.add(l.back(), i);
  }
  m.add_sos2("g", l, {Rational(0), Rational(1), Rational(2), Rational(3)});
  m.add_constraint(conv, Sense::kEqual, 1, "conv");
  m.add_constraint(pos, Sense::kEqual, Rational(3, 2), "pos");
  m.set_objective(LinearExpr(l[0], -1) + LinearExpr(l[3], -1));
  EXPECT_NEAR(solve_lp(m).objective, -1.0, 1e-9);
  const MipSolution s = solve_mip(m, Exact());
  ASSERT_EQ(s.status, MipStatus::kOptimal);
  EXPECT_NEAR(s.objective, 0.0, 1e-9);
  EXPECT_NEAR(s.x[1], 0.5, 1e-9);
  EXPECT_NEAR(s.x[2], 0.5, 1e-9);
  EXPECT_TRUE(is_mip_feasible_pattern(m, s.x, 1e-9));
}

TEST(Mip, RelativeGap) {
  EXPECT_EQ(relative_gap(100, 100), 0.0);
  EXPECT_NEAR(relative_gap(100, 90), 0.1, 1e-12);
  EXPECT_GT(relative_gap(1, -kInf), 1.0);
}

TEST(External, ParsesStatusesAndColumns) {
  const std::vector<std::string> cols{"C0", "C1"};
  MipSolution s = parse_external_solution("status optimal\nobjective 3.5\nC0 1\nC1 2.5\n", cols);
  EXPECT_EQ(s.status, MipStatus::kOptimal);
  EXPECT_TRUE(s.has_incumbent);
  EXPECT_EQ(s.x, (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(s.best_bound, 3.5);

  s = parse_external_solution("status limit\nobjective 4\nbound 3\nC0 1\nC1 0\n", cols);
  EXPECT_EQ(s.status, MipStatus::kLimit);
  EXPECT_TRUE(s.has_incumbent);
  EXPECT_NEAR(s.gap, 0.25, 1e-12);

  s = parse_external_solution("status limit\n", cols);
  EXPECT_EQ(s.status, MipStatus::kLimit);
  EXPECT_FALSE(s.has_incumbent);

  EXPECT_EQ(parse_external_solution("status infeasible\n", cols).status, MipStatus::kInfeasible);
  EXPECT_EQ(parse_external_solution("status unbounded\n", cols).status, MipStatus::kUnbounded);
  EXPECT_EQ(parse_external_solution("status error\n", cols).status, MipStatus::kError);
  EXPECT_THROW(parse_external_solution("status maybe\n", cols), ExternalSolverError);
  EXPECT_THROW(parse_external_solution("objective 1\n", cols), ExternalSolverError);
  EXPECT_THROW(parse_external_solution("status optimal\nC0 1\n", cols), ExternalSolverError);
  EXPECT_THROW(parse_external_solution("status optimal\nC9 1\nC0 1\nC1 1\n", cols), ExternalSolverError);
  EXPECT_THROW(parse_external_solution("status optimal\nC0 x\nC1 1\n", cols), ExternalSolverError);
}

TEST(External, MissingExecutableIsReported) {
  ExternalSolverConfig cfg;
  cfg.command = "gasmip-no-such-solver {mps} {sol}";
  try {
    solve_external(Textbook(), cfg);
    FAIL() << "expected ExternalSolverError";
  } catch (const ExternalSolverError& e) {
    EXPECT_NE(std::string(e.what()).find("not found"), std::string::npos) << e.what();
  }
  cfg.command.clear();
  EXPECT_THROW(solve_external(Textbook(), cfg), ExternalSolverError);
}

class HighsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!testing::highspy_available()) GTEST_SKIP() << "python3 with highspy not available";
    cfg_.command = default_external_command();
    cfg_.rel_gap = 1e-9;
    cfg_.time_limit = 60;
  }
  ExternalSolverConfig cfg_;
};

TEST_F(HighsTest, RandomLpsAgreeWithInternalSimplex) {
  std::mt19937 rng(2718);
  for (int i = 0; i < 20; ++i) {
    const MipModel m = testing::random_lp(rng, 4 + i % 8, 5 + i % 9);
    const LpSolution internal = solve_lp(m);
    const MipSolution external = solve_external(m, cfg_);
    ASSERT_EQ(internal.status, LpStatus::kOptimal) << "case " << i;
    ASSERT_EQ(external.status, MipStatus::kOptimal) << "case " << i;
    EXPECT_LE(RelDiff(internal.objective, external.objective), 1e-7) << "case " << i;
  }
}

TEST_F(HighsTest, KnapsackAgrees) {
  const MipModel m = Knapsack();
  const MipSolution external = solve_external(m, cfg_);
  ASSERT_EQ(external.status, MipStatus::kOptimal);
  EXPECT_NEAR(external.objective, solve_mip(m, Exact()).objective, 1e-9);
  EXPECT_TRUE(is_mip_feasible_pattern(m, external.x, 1e-6));
}

TEST_F(HighsTest, InfeasibleModelIsReported) {
  MipModel m;
  const VarId x = m.add_binary(VarLabel{"x", {}});
  const VarId y = m.add_binary(VarLabel{"y", {}});
  m.add_constraint(LinearExpr(x) + LinearExpr(y), Sense::kGreaterEqual, 3, "c");
  EXPECT_EQ(solve_external(m, cfg_).status, MipStatus::kInfeasible);
}

}  // namespace
}  // namespace gasmip
