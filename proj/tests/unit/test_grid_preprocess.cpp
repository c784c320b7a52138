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

#include <filesystem>
#include <fstream>
#include <random>

#include "gasmip/grid.hpp"
#include "gasmip/preprocess.hpp"
#include "oracles.hpp"

namespace gasmip {
namespace {

using testing::make_grid;

std::vector<Integer> Ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

TEST(Grid, FlowsFollowRoundedSquareRoot) {
  const PiecewiseGrid g = grid_from_pressures(Ints({0, 1, 4}), Rational(4));
  EXPECT_EQ(g.F, Ints({0, 2, 4}));
}

TEST(Grid, GenerateUsesEqualIntegerPressureSteps) {
  GridRequest req{.resistance = Rational(1), .pressure_range = Integer(25), .n_segments = 5,
                  .reference_pressure_sum = Rational(4), .flow_cap = std::nullopt};
  const PiecewiseGrid g = generate_grid(req);
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g.P, Ints({0, 5, 10, 15, 20, 25}));
  EXPECT_EQ(g.F[0], 0);
  EXPECT_EQ(g.F[5], 10);  // sqrt(4 * 25)
}

TEST(Grid, StepIsFloorOfRangeOverSegments) {
  GridRequest req{.resistance = Rational(1), .pressure_range = Integer(26), .n_segments = 5,
                  .reference_pressure_sum = Rational(100), .flow_cap = std::nullopt};
  EXPECT_EQ(generate_grid(req).P.back(), 25);
}

TEST(Grid, ZeroPressureGivesZeroFlow) {
  for (int s = 2; s <= 6; ++s) {
    GridRequest req{.resistance = ParseRational("379.82"), .pressure_range = Integer(25), .n_segments = s,
                    .reference_pressure_sum = Rational(111), .flow_cap = std::nullopt};
    const PiecewiseGrid g = generate_grid(req);
    EXPECT_EQ(g.F[0], 0);
    EXPECT_EQ(g.P[0], 0);
  }
}

TEST(Grid, TiesAreBumpedOrRejectedAtCapacity) {
  // sqrt(0.1 * P) rounds to 0 for P = 0, 1, 2, so ties are bumped to 0, 1, 2.
  const PiecewiseGrid g = grid_from_pressures(Ints({0, 1, 2}), Rational(1, 10));
  EXPECT_EQ(g.F, Ints({0, 1, 2}));
  EXPECT_THROW(grid_from_pressures(Ints({0, 1, 2}), Rational(1, 10), Rational(1)), GridError);
}

TEST(Grid, RejectsInvalidRequests) {
  GridRequest req{.resistance = Rational(1), .pressure_range = Integer(3), .n_segments = 5,
                  .reference_pressure_sum = Rational(4), .flow_cap = std::nullopt};
  EXPECT_THROW(generate_grid(req), GridError);
  req.pressure_range = 10;
  req.n_segments = 1;
  EXPECT_THROW(generate_grid(req), GridError);
  EXPECT_THROW(validate_grid(make_grid({0, 2, 2}, {0, 1, 3})), GridError);
  EXPECT_THROW(validate_grid(make_grid({1, 2, 3}, {0, 1, 3})), GridError);
}

TEST(Grid, RoundSqrtRoundsHalfUp) {
  EXPECT_EQ(RoundSqrt(Rational(0)), 0);
  EXPECT_EQ(RoundSqrt(Rational(2)), 1);          // 1.414
  EXPECT_EQ(RoundSqrt(Rational(9, 4)), 2);       // exactly 1.5
  EXPECT_EQ(RoundSqrt(Rational(224, 100)), 1);   // 1.4966
  EXPECT_EQ(RoundSqrt(Rational(1000000)), 1000);
}

TEST(Grid, InterpolationHitsGridPointsAndMidpoints) {
  const PiecewiseGrid g = make_grid({0, 4, 6, 7}, {0, 1, 3, 6});
  for (size_t z = 0; z < g.size(); ++z) EXPECT_EQ(interpolate_flow(g, Rational(g.P[z])), Rational(g.F[z]));
  EXPECT_EQ(interpolate_flow(g, Rational(2)), Rational(5));
  EXPECT_EQ(interpolate_flow(g, Rational(9, 2)), Rational(13, 2));
}

TEST(Abc, KnownEntry) {
  const AbcTables t = compute_abc(make_grid({0, 2, 3}, {0, 1, 3}));
  EXPECT_EQ(t.A.at(1, 2), -3);
  EXPECT_EQ(t.A.at(2, 1), 0);
}

TEST(Abc, ProportionalGridGivesZeroTables) {
  const AbcTables t = compute_abc(make_grid({0, 1, 2, 5}, {0, 1, 2, 5}));
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) {
      if (t.A.has(i, j)) EXPECT_EQ(t.A.at(i, j), 0);
      if (t.B.has(i, j)) EXPECT_EQ(t.B.at(i, j), 0);
      if (t.C.has(i, j)) EXPECT_EQ(t.C.at(i, j), 0);
    }
  }
}

TEST(Abc, SignInvariantsAndDomains) {
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const PiecewiseGrid g = testing::random_grid(rng, 3 + static_cast<size_t>(i % 6));
    const AbcTables t = compute_abc(g);
    EXPECT_EQ(t, testing::literal_abc(g));
    for (size_t a = 0; a < g.size(); ++a) {
      EXPECT_FALSE(t.A.has(a, a));
      for (size_t b = 0; b < g.size(); ++b) {
        if (t.A.has(a, b)) EXPECT_LE(t.A.at(a, b), 0);
        if (t.B.has(a, b)) EXPECT_GE(t.B.at(a, b), 0);
        if (t.C.has(a, b)) EXPECT_LE(t.C.at(a, b), 0);
      }
    }
  }
}

TEST(ZTables, SharedZeroValueProducesNoTuple) {
  // u = 2, v = 1 gives Z = (0, 0, 1, 2): the only repeated value is 0.
  const ZParams p = compute_z_tables(make_grid({0, 1, 2, 4}, {0, 2, 3, 6}));
  bool found = false;
  for (const KeptDirection& d : p.directions) {
    if (d.u == 2 && d.v == 1) {
      found = true;
      ASSERT_EQ(d.sets.size(), 1u);
      EXPECT_EQ(d.sets[0].value, 0);
    }
  }
  EXPECT_TRUE(found);
  for (const ZTuple& t : p.tuples) EXPECT_FALSE(t.u == 2 && t.v == 1);
}

TEST(ZTables, CutCoefficientCases) {
  CutCoefficients s = cut_coefficients(2, 5);
  EXPECT_EQ(s.D, 2);
  EXPECT_EQ(s.E, 0);
  s = cut_coefficients(7, 5);
  EXPECT_EQ(s.E, 5);
  EXPECT_EQ(s.F, -2);
  s = cut_coefficients(-2, -5);
  EXPECT_EQ(s.D, 2);
  EXPECT_EQ(s.F, 0);
  s = cut_coefficients(-7, -5);
  EXPECT_EQ(s.E, 5);
  EXPECT_EQ(s.F, -2);
  s = cut_coefficients(-5, -5);
  EXPECT_EQ(s.D, 5);
  EXPECT_EQ(s.F, 0);
  s = cut_coefficients(3, 0);
  EXPECT_EQ(s.D, 0);
  EXPECT_EQ(s.E, 0);
  EXPECT_EQ(s.F, 0);
}

TEST(ZTables, MatchesLiteralOracleOnRandomGrids) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const size_t points = 3 + static_cast<size_t>(i % 5);  // 3..7
    const PiecewiseGrid g = testing::random_grid(rng, points);
    const std::string diff = testing::diff_zparams(compute_z_tables(g), testing::literal_z_tables(g));
    EXPECT_EQ(diff, "") << "grid " << i;
  }
}

TEST(ZTables, TupleInvariants) {
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    const PiecewiseGrid g = testing::random_grid(rng, 3 + static_cast<size_t>(i % 5));
    const ZParams p = compute_z_tables(g);
    for (const ZTuple& t : p.tuples) {
      EXPECT_NE(t.sgn, 0);
      EXPECT_EQ(t.rhs, -abs(t.sgn));
      EXPECT_LE(t.u, p.uv_max);
      EXPECT_LE(t.v, p.uv_max);
      for (size_t z = 0; z < g.size(); ++z) {
        EXPECT_EQ(t.pre[z], Integer(t.u) * g.F[z] - Integer(t.v) * g.P[z]);
        EXPECT_EQ(t.aux[z], t.sgn);
      }
    }
  }
}

TEST(ZTables, DeterministicAndParallelEqualsSerial) {
  std::mt19937 rng(5);
  std::vector<PiecewiseGrid> grids;
  for (int i = 0; i < 8; ++i) grids.push_back(testing::random_grid(rng, 4 + static_cast<size_t>(i % 3)));
  std::vector<ZParams> serial;
  for (const auto& g : grids) serial.push_back(compute_z_tables(g));
  EXPECT_EQ(compute_z_tables_parallel(grids, 3), serial);
  EXPECT_EQ(compute_z_tables_parallel(grids, 1), serial);
  EXPECT_EQ(zparams_to_json(compute_z_tables(grids[0])), zparams_to_json(serial[0]));
}

TEST(ZTables, JsonRoundTrip) {
  const ZParams p = compute_z_tables(make_grid({0, 3, 5, 6, 8}, {0, 1, 3, 4, 7}));
  EXPECT_EQ(zparams_from_json(zparams_to_json(p)), p);
}

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("gasmip_cache_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(CacheTest, StoreThenHit) {
  const PiecewiseGrid g = make_grid({0, 3, 5, 6}, {0, 1, 3, 4});
  ZParamsCache cache((dir_ / "z.json").string());
  EXPECT_FALSE(cache.lookup(g).has_value());
  cache.store({compute_z_tables(g)});
  std::string warning;
  const auto hit = cache.lookup(g, &warning);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(*hit, compute_z_tables(g));
  EXPECT_EQ(warning, "");
  EXPECT_FALSE(cache.lookup(make_grid({0, 3, 5, 7}, {0, 1, 3, 4})).has_value());
}

TEST_F(CacheTest, CorruptFileWarnsAndMisses) {
  std::filesystem::create_directories(dir_);
  const auto path = dir_ / "z.json";
  std::ofstream(path) << "{ not json";
  ZParamsCache cache(path.string());
  std::string warning;
  EXPECT_FALSE(cache.lookup(make_grid({0, 1, 2}, {0, 1, 3}), &warning).has_value());
  EXPECT_NE(warning.find("corrupted"), std::string::npos);
  // Storing over a corrupt file starts afresh.
  const PiecewiseGrid g = make_grid({0, 1, 2}, {0, 1, 3});
  cache.store({compute_z_tables(g)});
  EXPECT_TRUE(cache.lookup(g).has_value());
}

TEST_F(CacheTest, VersionMismatchWarns) {
  std::filesystem::create_directories(dir_);
  const auto path = dir_ / "z.json";
  std::ofstream(path) << R"({"format": "gasmip-zparams", "version": 999, "entries": {}})";
  std::string warning;
  EXPECT_FALSE(ZParamsCache(path.string()).lookup(make_grid({0, 1, 2}, {0, 1, 3}), &warning).has_value());
  EXPECT_NE(warning.find("version"), std::string::npos);
}

}  // namespace
}  // namespace gasmip
