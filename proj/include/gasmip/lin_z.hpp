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

// Z linearization of the flow-pressure relation of one pipeline in one
// period. Flow and pressure gradient are split into forward and reverse
// parts; gamma interpolates between grid points, delta selects the segment
// and xi the flow direction.

#pragma once

#include <string>
#include <vector>

#include "gasmip/grid.hpp"
#include "gasmip/mip_model.hpp"
#include "gasmip/preprocess.hpp"

namespace gasmip {

struct ZOptions {
  // Declare delta and xi continuous on [0,1] (tightness experiments).
  bool integers_as_continuous = false;
  // Default: xi = 1 selects forward flow (f- = 0), which is what the cut
  // algebra gives literally. When set, xi is replaced by 1 - xi.
  bool xi_reverse_is_one = false;
};

// Existing variables of the surrounding model the block attaches to.
struct ZAttachment {
  std::vector<std::string> index;  // label index, e.g. {"k3", "l2"}
  VarId f;                         // average flow, free
  VarId p_m;                       // pressure at the sending node
  VarId p_n;                       // pressure at the receiving node
  Rational p_lower;                // min of the node lower bounds
  Rational p_upper;                // max of the node upper bounds
};

struct ZPipelineVars {
  VarId f, f_plus, f_minus, p_plus, p_minus, xi;
  std::vector<VarId> gamma;
  std::vector<VarId> delta;
};

// Emits the Z rows for one pipeline: flow and pressure splits, chord fan,
// convexity, adjacency, reverse-part bounds, one cut pair per tuple with a
// nonzero shared value, and receiving-node pressure bounds.
// Throws ModelError when params were computed for a different grid.
ZPipelineVars emit_z(MipModel& model, const ZAttachment& at, const PiecewiseGrid& grid,
                     const ZParams& params, const ZOptions& options = {});

struct ZDecoded {
  Rational flow;      // f+ - f-
  Rational gradient;  // p+ - p-
  bool forward = true;
};

ZDecoded decode_z(const std::vector<Rational>& values, const ZPipelineVars& vars,
                  const ZOptions& options = {});
ZDecoded decode_z(const std::vector<double>& values, const ZPipelineVars& vars,
                  const ZOptions& options = {});

// Standalone single-pipeline model: p_m, p_n within [p_lower, p_upper], free
// f, zero objective.
struct SinglePipelineZ {
  MipModel model;
  ZPipelineVars vars;
  VarId p_m, p_n;
};
SinglePipelineZ single_pipeline_z(const PiecewiseGrid& grid, const ZParams& params,
                                  const Rational& p_lower, const Rational& p_upper,
                                  const ZOptions& options = {});

}  // namespace gasmip
