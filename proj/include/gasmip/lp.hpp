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

// Bounded primal simplex in double precision with an explicit dense basis
// inverse. Intended for desk-scale models (up to a few thousand rows).

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gasmip/mip_model.hpp"

namespace gasmip {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpColumnEntry {
  int row;
  double value;
};

// min c.x + c0 s.t. row_lower <= A x <= row_upper, col_lower <= x <= col_upper.
struct LpProblem {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<std::vector<LpColumnEntry>> columns;
  std::vector<double> row_lower, row_upper;
  std::vector<double> col_lower, col_upper;
  std::vector<double> cost;
  double cost_constant = 0.0;
};

// Continuous view of the model (integrality and SOS2 groups ignored).
LpProblem to_lp_problem(const MipModel& model);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNumericalError };
const char* ToString(LpStatus status);

// Column and row-slack statuses, reusable as a warm start.
struct LpBasis {
  enum class At : int8_t { kBasic, kLower, kUpper, kZero };
  std::vector<At> columns;
  std::vector<At> rows;
  bool empty() const { return columns.empty(); }
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int64_t iteration_limit = 1'000'000;
  double time_limit = kInf;  // seconds; exceeded -> kIterationLimit
  int refactor_interval = 100;
  bool scale = true;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalError;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> duals;  // one per row; d(objective)/d(rhs)
  std::vector<double> reduced_costs;
  LpBasis basis;
  int64_t iterations = 0;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {},
                    const LpBasis* warm_start = nullptr);
LpSolution solve_lp(const MipModel& model, const LpOptions& options = {});

// max violation of rows and bounds at x (absolute).
double max_violation(const LpProblem& problem, const std::vector<double>& x);

}  // namespace gasmip
