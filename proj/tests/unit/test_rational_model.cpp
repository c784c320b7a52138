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

#include <random>
#include <thread>

#include "gasmip/mip_model.hpp"
#include "gasmip/rational.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(ParseRational("12"), Rational(12));
  EXPECT_EQ(ParseRational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(ParseRational("0.125"), Rational(1, 8));
  EXPECT_EQ(ParseRational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(ParseRational("-2.5E+2"), Rational(-250));
  EXPECT_EQ(ParseRational("379.82"), Rational(18991, 50));
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1e", "3/", "0x10"}) {
    EXPECT_THROW(ParseRational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, DecimalAndFractionStrings) {
  EXPECT_EQ(ToDecimalString(Rational(1, 8)), "0.125");
  EXPECT_EQ(ToDecimalString(Rational(-250)), "-250");
  EXPECT_EQ(ToFractionString(Rational(3, 2)), "3/2");
  EXPECT_EQ(ToFractionString(ParseRational("6/4")), "3/2");
  EXPECT_EQ(ToDecimalString(Rational(1, 3)).substr(0, 6), "0.3333");
  EXPECT_EQ(ToDecimalString(Rational(0)), "0");
}

TEST(Rational, DoubleRoundTripIsExact) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double v = d(rng);
    EXPECT_EQ(ToDouble(FromDouble(v)), v);
    EXPECT_EQ(ParseRational(ToDecimalString(FromDouble(v))), FromDouble(v));
  }
}

TEST(MipModel, AddBinaryHasUnitBounds) {
  MipModel m;
  const VarId xi = m.add_binary(VarLabel{"xi", {"k1", "l1"}});
  EXPECT_EQ(m.variable(xi).name, "xi[k1,l1]");
  EXPECT_EQ(m.variable(xi).kind, VarKind::kBinary);
  EXPECT_EQ(*m.variable(xi).lower, 0);
  EXPECT_EQ(*m.variable(xi).upper, 1);
}

TEST(MipModel, ContinuousDefaultIsUnboundedAbove) {
  MipModel m;
  const VarId x = m.add_continuous(VarLabel{"x", {}});
  EXPECT_EQ(*m.variable(x).lower, 0);
  EXPECT_FALSE(m.variable(x).upper.has_value());
}

TEST(MipModel, RejectsInvertedBoundsAndDuplicates) {
  MipModel m;
  EXPECT_THROW(m.add_continuous(VarLabel{"x", {}}, Rational(1), Rational(0)), ModelError);
  m.add_continuous(VarLabel{"y", {"1"}});
  EXPECT_THROW(m.add_continuous(VarLabel{"y", {"1"}}), ModelError);
  EXPECT_THROW(m.add_variable(VarSpec{VarLabel{"b", {}}, VarKind::kBinary, Rational(0), Rational(2)}), ModelError);
}

TEST(MipModel, ConstraintTermsAreMergedAndTagged) {
  MipModel m;
  const VarId x = m.add_continuous(VarLabel{"x", {}});
  const VarId y = m.add_continuous(VarLabel{"y", {}});
  LinearExpr e;
  e.add(x, 2).add(y, 3).add(x, -2).add_constant(5);
  const int row = m.add_constraint(e, Sense::kLessEqual, 11, "T1");
  const LinearConstraint& c = m.constraints()[static_cast<size_t>(row)];
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_EQ(c.terms[0].var, y);
  EXPECT_EQ(c.rhs, 6);
  EXPECT_THROW(m.add_constraint(LinearExpr(x), Sense::kEqual, 0, ""), ModelError);
  EXPECT_THROW(m.add_constraint(LinearExpr(VarId{99}), Sense::kEqual, 0, "T"), ModelError);
}

TEST(MipModel, EmptyModelStatsAreZero) {
  EXPECT_EQ(model_stats(MipModel()), ModelStats{});
}

TEST(MipModel, StatsCountDefinitions) {
  MipModel m;
  const VarId a = m.add_binary(VarLabel{"a", {}});
  const VarId b = m.add_continuous(VarLabel{"b", {}});
  const VarId s1 = m.add_continuous(VarLabel{"s", {"1"}});
  const VarId s2 = m.add_continuous(VarLabel{"s", {"2"}});
  m.add_sos2("g", {s1, s2}, {Rational(0), Rational(1)});
  m.add_constraint(LinearExpr(a) + LinearExpr(b), Sense::kLessEqual, 3, "R");
  m.add_constraint(LinearExpr(s1) + LinearExpr(s2), Sense::kEqual, 1, "S");
  const ModelStats st = model_stats(m);
  EXPECT_EQ(st.n_constraints, 2);
  EXPECT_EQ(st.n_binary, 1);
  EXPECT_EQ(st.n_continuous, 3);
  EXPECT_EQ(st.n_sos2_groups, 1);
  EXPECT_EQ(st.n_nonzeros, 4);
  EXPECT_EQ(constraint_counts_by_tag(m).at("R"), 1);
}

TEST(MipModel, Sos2RequiresIncreasingWeights) {
  MipModel m;
  const VarId s1 = m.add_continuous(VarLabel{"s", {"1"}});
  const VarId s2 = m.add_continuous(VarLabel{"s", {"2"}});
  EXPECT_THROW(m.add_sos2("g", {s1, s2}, {Rational(1), Rational(1)}), ModelError);
  EXPECT_THROW(m.add_sos2("g", {s1}, {Rational(1)}), ModelError);
}

TEST(MipModel, RelaxRemovesIntegrality) {
  MipModel m;
  for (int i = 0; i < 7; ++i) m.add_binary(VarLabel{"d", {std::to_string(i)}});
  const MipModel r = relax(m);
  const ModelStats st = model_stats(r);
  EXPECT_EQ(st.n_binary, 0);
  EXPECT_EQ(st.n_continuous, 7);
  for (const Variable& v : r.variables()) {
    EXPECT_EQ(*v.lower, 0);
    EXPECT_EQ(*v.upper, 1);
  }
}

TEST(MipModel, RelaxOfContinuousModelIsIdentity) {
  std::mt19937 rng(3);
  const MipModel m = testing::random_lp(rng, 5, 6);
  auto a = nlohmann::json::parse(to_json(relax(m)));
  auto b = nlohmann::json::parse(to_json(m));
  a.erase("name");
  b.erase("name");
  EXPECT_EQ(a, b);
}

TEST(MipModel, RelaxNeverLeavesBinariesOnRandomModels) {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    const MipModel m = testing::random_binary_mip(rng, 1 + i % 8, 3);
    EXPECT_EQ(model_stats(relax(m)).n_binary, 0);
  }
}

TEST(MipModel, JsonDumpIsValidAndComplete) {
  MipModel m("demo");
  const VarId x = m.add_binary(VarLabel{"x", {"k1"}});
  const VarId y = m.add_continuous(VarLabel{"y", {}}, std::nullopt, Rational(5, 2));
  m.add_constraint(LinearExpr(x) + LinearExpr(y, 2), Sense::kGreaterEqual, 1, "row_family");
  m.set_objective(LinearExpr(y));
  const auto j = nlohmann::json::parse(to_json(m));
  EXPECT_EQ(j["name"], "demo");
  EXPECT_EQ(j["variables"].size(), 2u);
  EXPECT_EQ(j["constraints"].size(), 1u);
  EXPECT_EQ(j["constraints"][0]["tag"], "row_family");
}

TEST(MipModel, ConcurrentReadOnlyViewsAgree) {
  std::mt19937 rng(5);
  const MipModel m = testing::random_binary_mip(rng, 10, 8);
  const ModelStats expected = model_stats(m);
  const std::string json = to_json(m);
  std::vector<std::thread> threads;
  std::vector<int> ok(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      ok[static_cast<size_t>(t)] = model_stats(m) == expected && to_json(relax(m)).size() > 0 && to_json(m) == json;
    });
  }
  for (auto& th : threads) th.join();
  for (int v : ok) EXPECT_EQ(v, 1);
}

}  // namespace
}  // namespace gasmip
