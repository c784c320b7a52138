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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "gasmip/analysis.hpp"
#include "gasmip/mps.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

MipModel TinyModel() {
  MipModel m("tiny");
  const VarId x = m.add_continuous(VarLabel{"x", {}}, Rational(0), Rational(4));
  m.add_constraint(LinearExpr(x), Sense::kGreaterEqual, 1, "c");
  m.set_objective(LinearExpr(x));
  return m;
}

void ExpectSameStructure(const MipModel& a, const MipModel& b) {
  const ModelStats sa = model_stats(a);
  const ModelStats sb = model_stats(b);
  EXPECT_EQ(sa.n_constraints, sb.n_constraints);
  EXPECT_EQ(sa.n_continuous + sa.n_binary, sb.n_continuous + sb.n_binary);
  EXPECT_EQ(sa.n_binary, sb.n_binary);
  EXPECT_EQ(sa.n_sos2_groups, sb.n_sos2_groups);
  EXPECT_EQ(sa.n_nonzeros, sb.n_nonzeros);
}

TEST(Mps, TinyModelHasAllSections) {
  const std::string text = export_mps(TinyModel()).text;
  for (const char* section : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
}

TEST(Mps, TinyModelIsReadByHighs) {
  if (!testing::highspy_available()) GTEST_SKIP() << "python3 with highspy not available";
  const auto dir = std::filesystem::temp_directory_path() / "gasmip_mps_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "tiny.mps";
  std::ofstream(path) << export_mps(TinyModel()).text;
  const std::string cmd = "python3 -c \"import highspy,sys; h=highspy.Highs(); h.setOptionValue('output_flag', False); "
                          "sys.exit(0 if h.readModel('" + path.string() + "')==highspy.HighsStatus.kOk and "
                          "h.getLp().num_col_==1 and h.getLp().num_row_==1 else 1)\"";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  std::filesystem::remove_all(dir);
}

TEST(Mps, Sos2GroupWritesS2Set) {
  MipModel m;
  std::vector<VarId> v;
  for (int i = 0; i < 3; ++i) v.push_back(m.add_continuous(VarLabel{"l", {std::to_string(i)}}, Rational(0), Rational(1)));
  m.add_sos2("grp", v, {Rational(1), Rational(2), Rational(3)});
  m.add_constraint(LinearExpr(v[0]) + LinearExpr(v[1]) + LinearExpr(v[2]), Sense::kEqual, 1, "cvx");
  const std::string text = export_mps(m).text;
  EXPECT_NE(text.find("\nSOS\n"), std::string::npos);
  EXPECT_NE(text.find(" S2 "), std::string::npos);
  const MipModel back = import_mps(text);
  ASSERT_EQ(back.sos2_groups().size(), 1u);
  EXPECT_EQ(back.sos2_groups()[0].members.size(), 3u);
  EXPECT_EQ(back.sos2_groups()[0].weights[2], 3);
}

TEST(Mps, RoundTripPreservesRandomModels) {
  std::mt19937 rng(21);
  for (int i = 0; i < 25; ++i) {
    const MipModel m = i % 2 ? testing::random_lp(rng, 6, 9) : testing::random_binary_mip(rng, 8, 5);
    const MipModel back = import_mps(export_mps(m).text);
    ExpectSameStructure(m, back);
    // Coefficients, bounds and rhs survive exactly (small rationals are dyadic or
    // written with 17 digits, both parse back to the same double).
    for (size_t r = 0; r < m.constraints().size(); ++r) {
      ASSERT_EQ(m.constraints()[r].terms.size(), back.constraints()[r].terms.size());
      for (size_t t = 0; t < m.constraints()[r].terms.size(); ++t) {
        EXPECT_EQ(ToDouble(m.constraints()[r].terms[t].coef), ToDouble(back.constraints()[r].terms[t].coef));
      }
      EXPECT_EQ(ToDouble(m.constraints()[r].rhs), ToDouble(back.constraints()[r].rhs));
      EXPECT_EQ(m.constraints()[r].sense, back.constraints()[r].sense);
    }
  }
}

TEST(Mps, RoundTripPreservesLinearizationModels) {
  for (Method method : {Method::kInc, Method::kSos2, Method::kZ}) {
    const MipModel m = single_pipeline_model(PipelineCase{}, method, 5, false);
    ExpectSameStructure(m, import_mps(export_mps(m).text));
  }
}

TEST(Mps, BoundKindsAndObjectiveConstant) {
  MipModel m;
  const VarId a = m.add_continuous(VarLabel{"a", {}}, std::nullopt, std::nullopt);
  const VarId b = m.add_continuous(VarLabel{"b", {}}, Rational(-3), Rational(7, 2));
  const VarId c = m.add_continuous(VarLabel{"c", {}}, std::nullopt, Rational(2));
  const VarId d = m.add_binary(VarLabel{"d", {}});
  const VarId e = m.add_continuous(VarLabel{"e", {}}, Rational(5), Rational(5));
  m.add_constraint(LinearExpr(a) + LinearExpr(b) + LinearExpr(c) + LinearExpr(d) + LinearExpr(e), Sense::kEqual, 3, "r");
  LinearExpr obj(a, 2);
  obj.add_constant(Rational(9, 4));
  m.set_objective(obj);
  const MipModel back = import_mps(export_mps(m).text);
  EXPECT_FALSE(back.variables()[0].lower.has_value());
  EXPECT_FALSE(back.variables()[0].upper.has_value());
  EXPECT_EQ(*back.variables()[1].lower, -3);
  EXPECT_EQ(*back.variables()[1].upper, Rational(7, 2));
  EXPECT_FALSE(back.variables()[2].lower.has_value());
  EXPECT_EQ(*back.variables()[2].upper, 2);
  EXPECT_EQ(back.variables()[3].kind, VarKind::kBinary);
  EXPECT_EQ(*back.variables()[4].lower, 5);
  EXPECT_EQ(*back.variables()[4].upper, 5);
  EXPECT_EQ(back.objective().constant, Rational(9, 4));
}

TEST(Mps, LongNamesAreMangledWithoutCollisions) {
  MipModel m;
  std::vector<VarId> vars;
  for (int i = 0; i < 40; ++i) {
    vars.push_back(m.add_continuous(VarLabel{"gamma", {"k" + std::to_string(i), "l1", "z3"}}));
  }
  // A short name that looks like a generated one must not collide.
  vars.push_back(m.add_continuous(VarLabel{"C0000000", {}}));
  LinearExpr e;
  for (VarId v : vars) e.add(v, 1);
  m.add_constraint(e, Sense::kLessEqual, 1, "a_very_long_row_tag");
  const MpsExport out = export_mps(m);
  std::set<std::string> unique(out.column_names.begin(), out.column_names.end());
  EXPECT_EQ(unique.size(), out.column_names.size());
  for (const std::string& n : out.column_names) EXPECT_LE(n.size(), kMpsNameLimit);
  EXPECT_EQ(out.column_names.back(), "C0000000");
  EXPECT_EQ(export_mps(m).text, out.text);  // deterministic
}

TEST(Mps, ValuesUseShortestExactDecimal) {
  MipModel m;
  const VarId x = m.add_continuous(VarLabel{"x", {}});
  m.add_constraint(LinearExpr(x, Rational(1, 8)), Sense::kLessEqual, Rational(1, 3), "r");
  const std::string text = export_mps(m).text;
  EXPECT_NE(text.find("0.125"), std::string::npos);
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
}

TEST(Mps, MalformedInputReportsLine) {
  try {
    import_mps("NAME x\nROWS\n N obj\n Q r1\nENDATA\n");
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(import_mps("NAME x\nROWS\n N obj\n"), ModelError);
  EXPECT_THROW(import_mps("NAME x\nROWS\n N obj\nCOLUMNS\n x unknown 1\nENDATA\n"), ModelError);
}

TEST(Mps, FreeFormInputIsAccepted) {
  const std::string text =
      "NAME free\nROWS\n N obj\n L lim\nCOLUMNS\n x obj -1 lim 1\n y obj -1 lim 1\nRHS\n rhs lim 1\n"
      "BOUNDS\n UP bnd x 1\n UP bnd y 1\nENDATA\n";
  const MipModel m = import_mps(text);
  EXPECT_EQ(m.num_variables(), 2);
  EXPECT_EQ(m.constraints().size(), 1u);
  EXPECT_EQ(m.constraints()[0].rhs, 1);
}

}  // namespace
}  // namespace gasmip
