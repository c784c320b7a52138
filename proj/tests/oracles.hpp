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

// Independent slow reference implementations used by the unit tests and the
// acceptance binary. None of them call the production code paths they check.

#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gasmip/grid.hpp"
#include "gasmip/lp.hpp"
#include "gasmip/mip_model.hpp"
#include "gasmip/polytope.hpp"
#include "gasmip/preprocess.hpp"

namespace gasmip::testing {

PiecewiseGrid make_grid(const std::vector<long>& F, const std::vector<long>& P);

// Strictly increasing integer grid starting at the origin with `points`
// points and steps in [1, max_step].
PiecewiseGrid random_grid(std::mt19937& rng, size_t points, long max_step = 6);

// Table computation transcribed step by step: every (u, v) in the full
// square range, element-wise multiple checks by rational ratio, repeated
// value sets in order of first occurrence, case-by-case cut coefficients.
ZParams literal_z_tables(const PiecewiseGrid& grid);
AbcTables literal_abc(const PiecewiseGrid& grid);

// Empty string when equal, otherwise a description of the first difference.
std::string diff_zparams(const ZParams& a, const ZParams& b);

// All vertices by solving every choice of `dim` active rows (equalities are
// always active) and keeping the feasible unique solutions. Exponential.
std::vector<std::vector<Rational>> brute_force_vertices(const HPolyhedron& h);

// Minimum objective over all 0/1 assignments of a model whose variables are
// all binary; nullopt when infeasible.
std::optional<double> exhaustive_binary_optimum(const MipModel& model);

// Random all-binary MIP with integer data.
MipModel random_binary_mip(std::mt19937& rng, int n_binaries, int n_rows);

// Random bounded feasible LP (min c.x) with mixed row senses.
MipModel random_lp(std::mt19937& rng, int n_rows, int n_cols);

// True iff python3 with highspy is available.
bool highspy_available();

}  // namespace gasmip::testing
