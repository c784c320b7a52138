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

// Builds the integrated power and gas dispatch MILP from an Instance and a
// choice of flow-pressure linearization.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasmip/grid.hpp"
#include "gasmip/instance.hpp"
#include "gasmip/lin_pwl.hpp"
#include "gasmip/lin_z.hpp"
#include "gasmip/mip_model.hpp"
#include "gasmip/preprocess.hpp"

namespace gasmip {

enum class Method { kInc, kSos2, kZ };
const char* ToString(Method method);
Method ParseMethod(const std::string& text);  // "inc", "sos2", "z"

struct GridOptions {
  int z_segments = 5;
  int flow_segments = 10;     // INC/SOS2, must be even
  int pressure_segments = 5;  // INC/SOS2, per node
  // Pressure sum used to scale Z grid flows; default min p_min + max p_max of
  // the two endpoints.
  std::optional<Rational> reference_pressure_sum;
  unsigned threads = 1;
};

struct MethodChoice {
  Method method = Method::kZ;
  std::vector<std::vector<Rational>> flow_grids;      // INC/SOS2, per pipeline
  std::vector<std::vector<Rational>> pressure_grids;  // INC/SOS2, per node (empty if unused)
  std::vector<PiecewiseGrid> z_grids;                 // Z, per pipeline
  std::vector<ZParams> z_params;                      // Z, per pipeline
  ZOptions z_options;
};

struct PrecomputeLog {
  std::string pipeline;
  bool cache_hit = false;
  double seconds = 0.0;
  size_t tuples = 0;
};

// Generates the grids (and Z tables, using `cache` when given) for every
// pipeline. Cache misses are computed in parallel and written back.
MethodChoice make_method_choice(const Instance& instance, Method method, const GridOptions& options = {},
                                const ZParamsCache* cache = nullptr, std::vector<PrecomputeLog>* log = nullptr,
                                std::vector<std::string>* warnings = nullptr);

PiecewiseGrid z_grid_for(const Instance& instance, const Pipeline& pipeline, int segments,
                         const std::optional<Rational>& reference_pressure_sum = std::nullopt);
Rational default_reference_pressure_sum(const Instance& instance, const Pipeline& pipeline);

// Variable handles indexed [k][entity position].
struct EsomVars {
  std::vector<std::vector<VarId>> p_gas, ns_gas, pressure;
  std::vector<std::vector<VarId>> p_elec, p_above, u, y, z, cs;  // per generator; unused slots invalid
  std::vector<std::vector<VarId>> linepack, flow, flow_in, flow_out;
  std::vector<std::vector<VarId>> flow_comp;
  std::vector<std::vector<VarId>> ns_elec, theta, line_flow;
  std::vector<std::vector<ZPipelineVars>> z_blocks;  // Z only
};

struct EsomModel {
  MipModel model;
  EsomVars vars;
  Method method = Method::kZ;
  std::vector<std::string> warnings;
};

// Throws ModelError when a grid is missing or does not match the instance.
EsomModel build_esom(const Instance& instance, const MethodChoice& choice);

// Largest |lhs - rhs| of the nodal gas balance over all (k, m), evaluated
// independently of the model rows.
double max_gas_balance_residual(const Instance& instance, const EsomModel& esom, const std::vector<double>& x);

}  // namespace gasmip
