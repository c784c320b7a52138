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

// Incremental (INC) and SOS2 piecewise linearizations of
// f|f| = R (p_m^2 - p_n^2). Each side is linearized on its own grid: the
// signed flow term per pipeline and the squared pressure per node.

#pragma once

#include <string>
#include <vector>

#include "gasmip/mip_model.hpp"

namespace gasmip {

// Signed flow grid: n_segments + 1 points from -cap to +cap. n_segments must
// be even so that 0 is a breakpoint.
std::vector<Rational> symmetric_flow_grid(const Rational& cap, int n_segments);

// Pressure grid from lo to hi: equidistant, interior points rounded to the
// nearest integer so squares stay small exact integers.
std::vector<Rational> pressure_grid(const Rational& lo, const Rational& hi, int n_segments);

// Throws ModelError unless strictly increasing with >= 2 points.
void validate_breakpoints(const std::vector<Rational>& points, const std::string& what);

// Per-node block. INC: `weights` are the segment fills and `binaries` the
// ordering binaries. SOS2: `weights` are the convex multipliers.
struct PwlNodeVars {
  VarId p;
  std::vector<Rational> grid;
  std::vector<VarId> weights;
  std::vector<VarId> binaries;
};

struct PwlPipelineVars {
  VarId f;
  std::vector<Rational> grid;
  std::vector<VarId> weights;
  std::vector<VarId> binaries;
};

// INC node: p = P_1 + sum dP_i x_i, x_{i+1} <= b_i <= x_i.
PwlNodeVars emit_inc_node(MipModel& model, const std::vector<std::string>& index, VarId p,
                          const std::vector<Rational>& grid);
// INC pipeline: f = F_1 + sum dF_i x_i, ordering rows, and the linearized
// flow equation over the two node blocks.
PwlPipelineVars emit_inc_pipeline(MipModel& model, const std::vector<std::string>& index,
                                  VarId f, const std::vector<Rational>& grid,
                                  const Rational& resistance, const PwlNodeVars& from,
                                  const PwlNodeVars& to);

// SOS2 node: p = sum mu_z P_z, sum mu = 1, mu in one SOS2 group.
PwlNodeVars emit_sos2_node(MipModel& model, const std::vector<std::string>& index, VarId p,
                           const std::vector<Rational>& grid);
// SOS2 pipeline: f = sum lambda F, sum lambda = 1,
// sum lambda F|F| = R (sum mu^m P^2 - sum mu^n P^2).
PwlPipelineVars emit_sos2_pipeline(MipModel& model, const std::vector<std::string>& index,
                                   VarId f, const std::vector<Rational>& grid,
                                   const Rational& resistance, const PwlNodeVars& from,
                                   const PwlNodeVars& to);

enum class PwlMethod { kIncremental, kSos2 };

struct SinglePipelinePwl {
  MipModel model;
  PwlNodeVars from, to;
  PwlPipelineVars pipeline;
};

// Two nodes joined by one pipeline; free f, p within the grid ranges, zero
// objective.
SinglePipelinePwl single_pipeline_pwl(PwlMethod method, const std::vector<Rational>& flow_grid,
                                      const std::vector<Rational>& pressure_grid_from,
                                      const std::vector<Rational>& pressure_grid_to,
                                      const Rational& resistance);

}  // namespace gasmip
