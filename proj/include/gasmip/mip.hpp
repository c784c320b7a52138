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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gasmip/lp.hpp"
#include "gasmip/mip_model.hpp"

namespace gasmip {

enum class MipStatus { kOptimal, kInfeasible, kUnbounded, kLimit, kError };
const char* ToString(MipStatus status);

struct MipOptions {
  double rel_gap = 1e-3;
  int64_t node_limit = 1'000'000;
  double time_limit = 3600.0;  // seconds
  double integrality_tol = 1e-6;
  LpOptions lp;
  bool record_trace = false;
};

// Bound and incumbent after each processed node.
struct MipTracePoint {
  int64_t node = 0;
  double best_bound = 0.0;
  double incumbent = 0.0;
};

struct MipSolution {
  MipStatus status = MipStatus::kError;
  bool has_incumbent = false;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  int64_t nodes = 0;
  int64_t lp_iterations = 0;
  double wall_time = 0.0;
  std::vector<double> x;
  std::vector<MipTracePoint> trace;
  std::string message;
};

// |obj - bound| / max(|obj|, 1e-10).
double relative_gap(double objective, double bound);

// Best-first branch and bound. Binaries branch on the most fractional value
// (pseudo-cost tie break); violated SOS2 groups split at the weighted middle.
MipSolution solve_mip(const MipModel& model, const MipOptions& options = {});

// True iff x is integral on binaries and satisfies every SOS2 group.
bool is_mip_feasible_pattern(const MipModel& model, const std::vector<double>& x, double tol);

}  // namespace gasmip
