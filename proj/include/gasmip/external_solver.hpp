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

// Solves a model with an external program through MPS file exchange.
//
// The command template may use {mps}, {sol}, {time_limit} and {gap}; they
// are replaced by the input path, the expected solution path and the
// limits. The solution file is line based:
//
//   status optimal|infeasible|unbounded|limit|error
//   objective <value>
//   bound <value>          (optional)
//   nodes <count>          (optional)
//   <column name> <value>  (one per column, MPS names)

#pragma once

#include <stdexcept>
#include <string>

#include "gasmip/mip.hpp"
#include "gasmip/mip_model.hpp"

namespace gasmip {

class ExternalSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kExternalSolverEnv = "GASMIP_EXTERNAL_SOLVER";

struct ExternalSolverConfig {
  std::string command;  // template, see above
  double time_limit = 3600.0;
  double rel_gap = 1e-3;
  std::string work_dir;  // default: a fresh directory under the system temp dir
  bool keep_files = false;
};

// Template from GASMIP_EXTERNAL_SOLVER, or empty.
std::string external_command_from_env();

// Default template running tools/highs_runner.py with python3.
std::string default_external_command();

// Throws ExternalSolverError on a missing executable, a failed run or an
// unreadable solution file.
MipSolution solve_external(const MipModel& model, const ExternalSolverConfig& config);

// Parses solution text; values are mapped back to model order by name.
MipSolution parse_external_solution(const std::string& text, const std::vector<std::string>& column_names);

}  // namespace gasmip
