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

#include <algorithm>
#include <random>
#include <set>

#include "gasmip/polytope.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

using Point = std::vector<Rational>;

std::set<Point> AsSet(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

Point Unit(size_t dim, size_t i, const Rational& s) {
  Point a(dim, Rational(0));
  a[i] = s;
  return a;
}

HPolyhedron Box(size_t dim, const Rational& lo, const Rational& hi) {
  HPolyhedron h;
  h.dim = dim;
  for (size_t i = 0; i < dim; ++i) {
    h.add_le(Unit(dim, i, 1), hi);
    h.add_le(Unit(dim, i, -1), -lo);
  }
  return h;
}

// Bounded by a box and containing the origin, so never empty.
HPolyhedron RandomPolytope(std::mt19937& rng, size_t dim, size_t extra_rows, bool with_equality) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rhs(0, 6);
  HPolyhedron h = Box(dim, Rational(-4), Rational(4));
  for (size_t r = 0; r < extra_rows; ++r) {
    Point a(dim);
    for (auto& x : a) x = coef(rng);
    h.add_le(a, Rational(rhs(rng)));
  }
  if (with_equality) {
    Point a(dim);
    for (auto& x : a) x = coef(rng);
    a[0] = 1;
    h.add_eq(a, Rational(0));
  }
  return h;
}

TEST(Polytope, UnitSquareHasFourVertices) {
  const VertexSet vs = enumerate_vertices(Box(2, Rational(0), Rational(1)));
  EXPECT_EQ(AsSet(vs.points), (std::set<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Polytope, TriangleHasThreeVertices) {
  HPolyhedron h;
  h.dim = 2;
  h.add_le(Unit(2, 0, -1), Rational(0));
  h.add_le(Unit(2, 1, -1), Rational(0));
  h.add_le({Rational(1), Rational(1)}, Rational(1));
  EXPECT_EQ(AsSet(enumerate_vertices(h).points), (std::set<Point>{{0, 0}, {1, 0}, {0, 1}}));
}

TEST(Polytope, EqualitiesAreRespected) {
  HPolyhedron h = Box(3, Rational(0), Rational(1));
  h.add_eq({Rational(1), Rational(1), Rational(1)}, Rational(1));
  EXPECT_EQ(AsSet(enumerate_vertices(h).points), (std::set<Point>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Polytope, MatchesBruteForceOnRandomPolytopes) {
  std::mt19937 rng(31);
  for (int i = 0; i < 60; ++i) {
    const size_t dim = 2 + static_cast<size_t>(i % 3);
    const HPolyhedron h = RandomPolytope(rng, dim, 2 + static_cast<size_t>(i % 7), i % 4 == 3);
    EXPECT_EQ(AsSet(enumerate_vertices(h).points), AsSet(testing::brute_force_vertices(h))) << "case " << i;
  }
  for (int i = 0; i < 5; ++i) {
    const HPolyhedron h = RandomPolytope(rng, 5 + static_cast<size_t>(i % 2), 8, false);
    EXPECT_EQ(AsSet(enumerate_vertices(h).points), AsSet(testing::brute_force_vertices(h))) << "large case " << i;
  }
}

TEST(Polytope, InvariantUnderRowPermutationAndScaling) {
  std::mt19937 rng(77);
  for (int i = 0; i < 20; ++i) {
    HPolyhedron h = RandomPolytope(rng, 3, 6, i % 2 == 0);
    const std::set<Point> base = AsSet(enumerate_vertices(h).points);
    std::shuffle(h.inequalities.begin(), h.inequalities.end(), rng);
    for (HRow& r : h.inequalities) {
      const Rational s(1 + static_cast<int>(rng() % 5));
      for (auto& a : r.a) a *= s;
      r.b *= s;
    }
    EXPECT_EQ(AsSet(enumerate_vertices(h).points), base);
  }
}

TEST(Polytope, RedundantRowsDoNotAddVertices) {
  HPolyhedron h = Box(2, Rational(0), Rational(1));
  const std::set<Point> base = AsSet(enumerate_vertices(h).points);
  h.add_le({Rational(1), Rational(1)}, Rational(2));
  h.add_le({Rational(1), Rational(0)}, Rational(1));
  EXPECT_EQ(AsSet(enumerate_vertices(h).points), base);
}

TEST(Polytope, UnboundedSetReportsDirection) {
  HPolyhedron h;
  h.dim = 2;
  h.names = {"x", "y"};
  h.add_le(Unit(2, 0, -1), Rational(0));
  h.add_le(Unit(2, 1, -1), Rational(0));
  h.add_le(Unit(2, 1, 1), Rational(1));
  try {
    enumerate_vertices(h);
    FAIL() << "expected UnboundedPolyhedron";
  } catch (const UnboundedPolyhedron& e) {
    ASSERT_EQ(e.direction.size(), 2u);
    EXPECT_GT(e.direction[0], 0);
    EXPECT_EQ(e.direction[1], 0);
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
}

TEST(Polytope, EmptySetHasNoVertices) {
  HPolyhedron h = Box(2, Rational(0), Rational(1));
  h.add_le({Rational(1), Rational(1)}, Rational(-1));
  EXPECT_TRUE(enumerate_vertices(h).points.empty());
}

TEST(Polytope, HypercubeIsIntegral) {
  HPolyhedron h = Box(4, Rational(0), Rational(1));
  h.binary_coords = {0, 1, 2, 3};
  const VertexSet vs = enumerate_vertices(h);
  const FractionalStats fs = fractional_stats(vs, h.binary_coords);
  EXPECT_EQ(fs.n_vertices, 16u);
  EXPECT_EQ(fs.n_fractional, 0u);
  EXPECT_EQ(fs.pct_fractional, 0.0);
}

TEST(Polytope, FractionalStatsCountMarkedCoordinates) {
  HPolyhedron h;
  h.dim = 2;
  h.add_le(Unit(2, 0, -1), Rational(0));
  h.add_le(Unit(2, 1, -1), Rational(0));
  h.add_le({Rational(2), Rational(2)}, Rational(1));
  h.binary_coords = {0, 1};
  const FractionalStats fs = fractional_stats(enumerate_vertices(h), h.binary_coords);
  EXPECT_EQ(fs.n_vertices, 3u);
  EXPECT_EQ(fs.n_fractional, 2u);
  EXPECT_NEAR(fs.pct_fractional, 200.0 / 3.0, 1e-12);
  EXPECT_EQ(fs.avg_fractional, 1.0);
}

TEST(Polytope, RayBudgetIsEnforced) {
  HPolyhedron h = Box(6, Rational(0), Rational(1));
  EnumerationOptions opt;
  opt.ray_budget = 10;
  EXPECT_THROW(enumerate_vertices(h, opt), EnumerationBudgetExceeded);
}

TEST(Polytope, ValidateRejectsBadRows) {
  HPolyhedron h;
  h.dim = 2;
  h.add_le({Rational(1)}, Rational(0));
  EXPECT_THROW(h.validate(), PolytopeError);
  HPolyhedron g = Box(2, Rational(0), Rational(1));
  g.binary_coords = {5};
  EXPECT_THROW(g.validate(), PolytopeError);
}

TEST(Polytope, ModelConversionUsesBoundsAndRows) {
  MipModel m;
  const VarId x = m.add_continuous(VarLabel{"x", {}}, Rational(0), Rational(2));
  const VarId b = m.add_binary(VarLabel{"b", {}});
  m.add_constraint(LinearExpr(x) - LinearExpr(b, 2), Sense::kLessEqual, 0, "link");
  const HPolyhedron h = to_hpolyhedron(relax(m), {b});
  EXPECT_EQ(h.dim, 2u);
  EXPECT_EQ(h.binary_coords, std::vector<size_t>{1});
  EXPECT_EQ(AsSet(enumerate_vertices(h).points), (std::set<Point>{{0, 0}, {0, 1}, {2, 1}}));
}

TEST(Polytope, PortaRoundTrip) {
  std::mt19937 rng(3);
  const HPolyhedron h = RandomPolytope(rng, 3, 4, true);
  const std::string text = write_porta_ieq(h);
  EXPECT_NE(text.find("DIM = 3"), std::string::npos);
  EXPECT_NE(text.find("INEQUALITIES_SECTION"), std::string::npos);
  EXPECT_NE(text.find("END"), std::string::npos);
  const HPolyhedron back = read_porta_ieq(text);
  EXPECT_EQ(AsSet(enumerate_vertices(back).points), AsSet(enumerate_vertices(h).points));
  const std::string poi = write_porta_poi(enumerate_vertices(h), 3);
  EXPECT_NE(poi.find("CONV_SECTION"), std::string::npos);
}

}  // namespace
}  // namespace gasmip
