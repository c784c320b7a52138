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

#include "gasmip/analysis.hpp"
#include "gasmip/lin_z.hpp"
#include "gasmip/mip.hpp"
#include "gasmip/polytope.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

using testing::make_grid;

constexpr int kPLow = 43;
constexpr int kPHigh = 68;

PiecewiseGrid CaseGrid(int segments) {
  return generate_grid(GridRequest{.resistance = ParseRational("379.82"), .pressure_range = Integer(kPHigh - kPLow),
                                   .n_segments = segments, .reference_pressure_sum = Rational(kPLow + kPHigh),
                                   .flow_cap = std::nullopt});
}

// Full assignment of the single-pipeline model for a point on segment `seg`
// with weight `t` on its upper end, in the given direction.
std::vector<Rational> CurvePoint(const SinglePipelineZ& sp, const PiecewiseGrid& g, size_t seg, const Rational& t,
                                 bool forward, const ZOptions& opt = {}) {
  std::vector<Rational> x(static_cast<size_t>(sp.model.num_variables()), Rational(0));
  auto set = [&](VarId v, const Rational& value) { x[static_cast<size_t>(v.value)] = value; };
  const Rational dp = (1 - t) * Rational(g.P[seg]) + (seg + 1 < g.size() ? t * Rational(g.P[seg + 1]) : Rational(0));
  const Rational flow =
      (1 - t) * Rational(g.F[seg]) + (seg + 1 < g.size() ? t * Rational(g.F[seg + 1]) : Rational(0));
  set(sp.vars.gamma[seg], 1 - t);
  if (t != 0) set(sp.vars.gamma[seg + 1], t);
  set(sp.vars.delta[seg], 1);
  const bool xi_one = forward != opt.xi_reverse_is_one;
  set(sp.vars.xi, xi_one ? 1 : 0);
  if (forward) {
    set(sp.p_n, kPLow);
    set(sp.p_m, kPLow + dp);
    set(sp.vars.f, flow);
    set(sp.vars.f_plus, flow);
    set(sp.vars.p_plus, dp);
  } else {
    set(sp.p_m, kPLow);
    set(sp.p_n, kPLow + dp);
    set(sp.vars.f, -flow);
    set(sp.vars.f_minus, flow);
    set(sp.vars.p_minus, dp);
  }
  return x;
}

// Every grid point and every segment midpoint, in both directions.
void ExpectCurveFeasible(const PiecewiseGrid& g, const ZParams& params, const ZOptions& opt, bool expect) {
  const SinglePipelineZ sp = single_pipeline_z(g, params, Rational(kPLow), Rational(kPHigh), opt);
  const HPolyhedron h = to_hpolyhedron(sp.model);
  bool all = true;
  for (bool forward : {true, false}) {
    for (size_t z = 0; z < g.size(); ++z) {
      const bool ok = satisfies(h, CurvePoint(sp, g, z, 0, forward, opt));
      if (expect) EXPECT_TRUE(ok) << "point " << z << (forward ? " forward" : " reverse");
      all = all && ok;
      if (z + 1 < g.size()) {
        const bool mid = satisfies(h, CurvePoint(sp, g, z, Rational(1, 2), forward, opt));
        if (expect) EXPECT_TRUE(mid) << "midpoint " << z << (forward ? " forward" : " reverse");
        all = all && mid;
      }
    }
  }
  if (!expect) EXPECT_FALSE(all);
}

TEST(LinZ, SinglePipelineCounts) {
  const ModelStats st = model_stats(single_pipeline_model(PipelineCase{}, Method::kZ, 5, false));
  EXPECT_EQ(st.n_constraints, 49);
  EXPECT_EQ(st.n_continuous, 13);
  EXPECT_EQ(st.n_binary, 7);
  EXPECT_EQ(st.n_sos2_groups, 0);
  EXPECT_EQ(z_formula(1, 2, 6).n_constraints, 49);
  EXPECT_EQ(z_formula(1, 2, 6).n_continuous, 13);
  EXPECT_EQ(z_formula(1, 2, 6).n_binary, 7);
}

TEST(LinZ, ZeroFlowAtEqualPressuresIsFeasible) {
  const PiecewiseGrid g = CaseGrid(5);
  const SinglePipelineZ sp = single_pipeline_z(g, compute_z_tables(g), Rational(kPLow), Rational(kPHigh));
  EXPECT_TRUE(satisfies(to_hpolyhedron(sp.model), CurvePoint(sp, g, 0, 0, true)));
}

TEST(LinZ, GridPointsAndMidpointsLieOnCurve) {
  for (int segments : {3, 5}) {
    const PiecewiseGrid g = CaseGrid(segments);
    ExpectCurveFeasible(g, compute_z_tables(g), ZOptions{}, true);
    ExpectCurveFeasible(g, compute_z_tables(g), ZOptions{.xi_reverse_is_one = true}, true);
  }
  // Square-root grids with random pressure steps and resistances.
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> step(1, 6);
  std::uniform_int_distribution<int> scale(20, 60000);
  for (int i = 0; i < 30; ++i) {
    std::vector<Integer> P{0};
    const int points = 3 + i % 4;
    while (static_cast<int>(P.size()) < points) P.push_back(P.back() + step(rng));
    const PiecewiseGrid g = grid_from_pressures(P, Rational(scale(rng)));
    ExpectCurveFeasible(g, compute_z_tables(g), ZOptions{}, true);
    ExpectCurveFeasible(g, compute_z_tables(g), ZOptions{.xi_reverse_is_one = true}, true);
  }
}

TEST(LinZ, OffCurveFlowIsInfeasible) {
  const PiecewiseGrid g = CaseGrid(5);
  const SinglePipelineZ sp = single_pipeline_z(g, compute_z_tables(g), Rational(kPLow), Rational(kPHigh));
  const HPolyhedron h = to_hpolyhedron(sp.model);
  std::vector<Rational> x = CurvePoint(sp, g, 2, Rational(1, 2), true);
  x[static_cast<size_t>(sp.vars.f.value)] += 1;
  x[static_cast<size_t>(sp.vars.f_plus.value)] += 1;
  EXPECT_FALSE(satisfies(h, x));
}

TEST(LinZ, FixedPressuresAndSelectorsDetermineFlow) {
  const PiecewiseGrid g = CaseGrid(3);
  const ZParams params = compute_z_tables(g);
  for (bool forward : {true, false}) {
    for (size_t seg = 0; seg + 1 < g.size(); ++seg) {
      const Rational t(1, 3);
      SinglePipelineZ sp = single_pipeline_z(g, params, Rational(kPLow), Rational(kPHigh),
                                             ZOptions{.integers_as_continuous = true});
      const std::vector<Rational> x = CurvePoint(sp, g, seg, t, forward);
      for (VarId v : {sp.p_m, sp.p_n, sp.vars.xi}) {
        sp.model.set_bounds(v, x[static_cast<size_t>(v.value)], x[static_cast<size_t>(v.value)]);
      }
      for (VarId v : sp.vars.delta) sp.model.set_bounds(v, x[static_cast<size_t>(v.value)], x[static_cast<size_t>(v.value)]);
      const VertexSet vs = enumerate_vertices(to_hpolyhedron(sp.model));
      ASSERT_FALSE(vs.points.empty());
      const Rational expected = (forward ? 1 : -1) * interpolate_flow(g, (1 - t) * Rational(g.P[seg]) + t * Rational(g.P[seg + 1]));
      for (const auto& p : vs.points) EXPECT_EQ(p[static_cast<size_t>(sp.vars.f.value)], expected);
    }
  }
}

TEST(LinZ, MipWithFixedPressuresReproducesInterpolant) {
  const PiecewiseGrid g = CaseGrid(5);
  const ZParams params = compute_z_tables(g);
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> dp_num(0, 4 * (kPHigh - kPLow));
  for (int i = 0; i < 12; ++i) {
    const Rational dp(dp_num(rng), 4);
    if (dp > Rational(g.P.back())) continue;
    for (bool forward : {true, false}) {
      for (int dir : {1, -1}) {
        SinglePipelineZ sp = single_pipeline_z(g, params, Rational(kPLow), Rational(kPHigh));
        const Rational pm = forward ? kPLow + dp : Rational(kPLow);
        const Rational pn = forward ? Rational(kPLow) : kPLow + dp;
        sp.model.set_bounds(sp.p_m, pm, pm);
        sp.model.set_bounds(sp.p_n, pn, pn);
        sp.model.set_objective(LinearExpr(sp.vars.f, dir));
        MipOptions opt;
        opt.rel_gap = 1e-9;
        const MipSolution s = solve_mip(sp.model, opt);
        ASSERT_EQ(s.status, MipStatus::kOptimal);
        const double expected = (forward ? 1.0 : -1.0) * ToDouble(interpolate_flow(g, dp));
        EXPECT_NEAR(s.x[static_cast<size_t>(sp.vars.f.value)], expected, 1e-6 * (1 + std::abs(expected)))
            << "dp " << ToDouble(dp) << (forward ? " forward" : " reverse");
        const ZDecoded d = decode_z(s.x, sp.vars);
        if (dp != 0) EXPECT_EQ(d.forward, forward);
      }
    }
  }
}

TEST(LinZ, ReversedAliasDomainCutsOffCurvePoints) {
  // Concave grid: slopes 4, 1, 1/3.
  const PiecewiseGrid g = make_grid({0, 4, 6, 7}, {0, 1, 3, 6});
  ZParams params = compute_z_tables(g);
  ExpectCurveFeasible(g, params, ZOptions{}, true);
  const size_t n = g.size();
  params.abc.B = IntTable(n);
  params.abc.C = IntTable(n);
  for (size_t z = 1; z < n; ++z) {
    for (size_t zt = z; zt < n; ++zt) {
      const Integer chi = g.F[z] * g.P[zt] - g.P[z] * g.F[zt];
      params.abc.B.set(zt, z, chi > 0 ? chi : Integer(0));
      params.abc.C.set(z, zt, chi < 0 ? chi : Integer(0));
    }
  }
  ExpectCurveFeasible(g, params, ZOptions{}, false);
}

TEST(LinZ, DecodeReportsDirection) {
  const PiecewiseGrid g = CaseGrid(3);
  for (bool reverse_is_one : {false, true}) {
    const ZOptions opt{.xi_reverse_is_one = reverse_is_one};
    const SinglePipelineZ sp = single_pipeline_z(g, compute_z_tables(g), Rational(kPLow), Rational(kPHigh), opt);
    for (bool forward : {true, false}) {
      const std::vector<Rational> x = CurvePoint(sp, g, 1, Rational(1, 4), forward, opt);
      const ZDecoded d = decode_z(x, sp.vars, opt);
      EXPECT_EQ(d.forward, forward);
      const Rational flow = Rational(3, 4) * Rational(g.F[1]) + Rational(1, 4) * Rational(g.F[2]);
      EXPECT_EQ(d.flow, forward ? flow : -flow);
      std::vector<double> xd;
      for (const Rational& r : x) xd.push_back(ToDouble(r));
      EXPECT_EQ(decode_z(xd, sp.vars, opt).forward, forward);
    }
  }
}

TEST(LinZ, SwappingEndpointsNegatesFlow) {
  const PiecewiseGrid g = CaseGrid(5);
  const ZParams params = compute_z_tables(g);
  const SinglePipelineZ sp = single_pipeline_z(g, params, Rational(kPLow), Rational(kPHigh));
  const HPolyhedron h = to_hpolyhedron(sp.model);
  for (size_t z = 0; z + 1 < g.size(); ++z) {
    const auto fwd = CurvePoint(sp, g, z, Rational(1, 3), true);
    const auto rev = CurvePoint(sp, g, z, Rational(1, 3), false);
    EXPECT_EQ(fwd[static_cast<size_t>(sp.p_m.value)], rev[static_cast<size_t>(sp.p_n.value)]);
    EXPECT_EQ(fwd[static_cast<size_t>(sp.vars.f.value)], -rev[static_cast<size_t>(sp.vars.f.value)]);
    EXPECT_TRUE(satisfies(h, fwd));
    EXPECT_TRUE(satisfies(h, rev));
  }
}

TEST(LinZ, ParamsForAnotherGridAreRejected) {
  const PiecewiseGrid g = CaseGrid(3);
  const ZParams other = compute_z_tables(CaseGrid(5));
  EXPECT_THROW(single_pipeline_z(g, other, Rational(kPLow), Rational(kPHigh)), ModelError);
}

TEST(LinZ, RelaxationIsIntegralAtThreeAndFiveSegments) {
  const TightnessReport r3 = tightness_report(PipelineCase{}, Method::kZ, 3);
  const TightnessReport r5 = tightness_report(PipelineCase{}, Method::kZ, 5);
  ASSERT_TRUE(r3.computed);
  ASSERT_TRUE(r5.computed);
  EXPECT_EQ(r3.n_fractional, 0u);
  EXPECT_EQ(r5.n_fractional, 0u);
  EXPECT_EQ(r3.n_vertices, 28u);
  EXPECT_EQ(r5.n_vertices, 40u);
}

}  // namespace
}  // namespace gasmip
