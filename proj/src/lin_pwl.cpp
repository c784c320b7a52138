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

#include "gasmip/lin_pwl.hpp"

namespace gasmip {
namespace {

Rational SignedSquare(const Rational& x) { return x * abs(x); }

VarLabel Label(const std::string& family, const std::vector<std::string>& index, size_t i) {
  VarLabel label{family, index};
  label.index.push_back("s" + std::to_string(i + 1));
  return label;
}

std::string JoinIndex(const std::vector<std::string>& index) {
  std::string out;
  for (const std::string& s : index) out += (out.empty() ? "" : ",") + s;
  return out;
}

// fills x_1..x_n with binaries b_1..b_{n-1}: x_{i+1} <= b_i <= x_i.
void EmitOrdering(MipModel& model, const std::vector<VarId>& fills,
                  const std::vector<VarId>& binaries, const std::string& tag) {
  for (size_t i = 0; i < binaries.size(); ++i) {
    model.add_constraint(LinearExpr(fills[i + 1]) - LinearExpr(binaries[i]), Sense::kLessEqual, 0,
                         tag);
    model.add_constraint(LinearExpr(binaries[i]) - LinearExpr(fills[i]), Sense::kLessEqual, 0, tag);
  }
}

}  // namespace

std::vector<Rational> symmetric_flow_grid(const Rational& cap, int n_segments) {
  if (n_segments < 2 || n_segments % 2 != 0) {
    throw ModelError("flow grid needs an even number of segments (>= 2)");
  }
  if (cap <= 0) throw ModelError("flow capacity must be positive");
  std::vector<Rational> grid;
  for (int i = 0; i <= n_segments; ++i) grid.push_back(-cap + 2 * cap * i / n_segments);
  return grid;
}

std::vector<Rational> pressure_grid(const Rational& lo, const Rational& hi, int n_segments) {
  if (n_segments < 1) throw ModelError("pressure grid needs at least one segment");
  if (!(lo < hi)) throw ModelError("pressure grid needs lo < hi");
  std::vector<Rational> grid{lo};
  for (int i = 1; i < n_segments; ++i) {
    const Rational exact = lo + (hi - lo) * i / n_segments;
    const Rational shifted = exact + Rational(1, 2);
    Integer rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    grid.emplace_back(rounded);
  }
  grid.push_back(hi);
  validate_breakpoints(grid, "pressure grid");
  return grid;
}

void validate_breakpoints(const std::vector<Rational>& points, const std::string& what) {
  if (points.size() < 2) throw ModelError(what + " needs at least 2 points");
  for (size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1] < points[i])) throw ModelError(what + " must be strictly increasing");
  }
}

PwlNodeVars emit_inc_node(MipModel& model, const std::vector<std::string>& index, VarId p,
                          const std::vector<Rational>& grid) {
  validate_breakpoints(grid, "pressure grid");
  PwlNodeVars out{p, grid, {}, {}};
  const size_t segs = grid.size() - 1;
  for (size_t i = 0; i < segs; ++i) {
    out.weights.push_back(model.add_continuous(Label("x_p", index, i), Rational(0), Rational(1)));
  }
  for (size_t i = 0; i + 1 < segs; ++i) out.binaries.push_back(model.add_binary(Label("b_p", index, i)));
  LinearExpr def(p);
  for (size_t i = 0; i < segs; ++i) def.add(out.weights[i], -(grid[i + 1] - grid[i]));
  model.add_constraint(def, Sense::kEqual, grid[0], "inc_node_def");
  EmitOrdering(model, out.weights, out.binaries, "inc_node_order");
  return out;
}

PwlPipelineVars emit_inc_pipeline(MipModel& model, const std::vector<std::string>& index,
                                  VarId f, const std::vector<Rational>& grid,
                                  const Rational& resistance, const PwlNodeVars& from,
                                  const PwlNodeVars& to) {
  validate_breakpoints(grid, "flow grid");
  PwlPipelineVars out{f, grid, {}, {}};
  const size_t segs = grid.size() - 1;
  for (size_t i = 0; i < segs; ++i) {
    out.weights.push_back(model.add_continuous(Label("x_f", index, i), Rational(0), Rational(1)));
  }
  for (size_t i = 0; i + 1 < segs; ++i) out.binaries.push_back(model.add_binary(Label("b_f", index, i)));
  LinearExpr def(f);
  for (size_t i = 0; i < segs; ++i) def.add(out.weights[i], -(grid[i + 1] - grid[i]));
  model.add_constraint(def, Sense::kEqual, grid[0], "inc_flow_def");

  LinearExpr eq;
  for (size_t i = 0; i < segs; ++i) {
    eq.add(out.weights[i], SignedSquare(grid[i + 1]) - SignedSquare(grid[i]));
  }
  for (size_t i = 0; i + 1 < from.grid.size(); ++i) {
    eq.add(from.weights[i], -resistance * (from.grid[i + 1] * from.grid[i + 1] -
                                           from.grid[i] * from.grid[i]));
  }
  for (size_t i = 0; i + 1 < to.grid.size(); ++i) {
    eq.add(to.weights[i],
           resistance * (to.grid[i + 1] * to.grid[i + 1] - to.grid[i] * to.grid[i]));
  }
  const Rational rhs = -SignedSquare(grid[0]) +
                       resistance * (from.grid[0] * from.grid[0] - to.grid[0] * to.grid[0]);
  model.add_constraint(eq, Sense::kEqual, rhs, "inc_flow_eq");
  EmitOrdering(model, out.weights, out.binaries, "inc_flow_order");
  return out;
}

PwlNodeVars emit_sos2_node(MipModel& model, const std::vector<std::string>& index, VarId p,
                           const std::vector<Rational>& grid) {
  validate_breakpoints(grid, "pressure grid");
  PwlNodeVars out{p, grid, {}, {}};
  for (size_t i = 0; i < grid.size(); ++i) {
    out.weights.push_back(model.add_continuous(Label("mu", index, i), Rational(0), Rational(1)));
  }
  LinearExpr def(p);
  LinearExpr conv;
  for (size_t i = 0; i < grid.size(); ++i) {
    def.add(out.weights[i], -grid[i]);
    conv.add(out.weights[i], 1);
  }
  model.add_constraint(def, Sense::kEqual, 0, "sos2_node_def");
  model.add_constraint(conv, Sense::kEqual, 1, "sos2_node_conv");
  model.add_sos2("mu[" + JoinIndex(index) + "]", out.weights, grid);
  return out;
}

PwlPipelineVars emit_sos2_pipeline(MipModel& model, const std::vector<std::string>& index,
                                   VarId f, const std::vector<Rational>& grid,
                                   const Rational& resistance, const PwlNodeVars& from,
                                   const PwlNodeVars& to) {
  validate_breakpoints(grid, "flow grid");
  PwlPipelineVars out{f, grid, {}, {}};
  for (size_t i = 0; i < grid.size(); ++i) {
    out.weights.push_back(model.add_continuous(Label("lambda", index, i), Rational(0), Rational(1)));
  }
  LinearExpr def(f);
  LinearExpr conv;
  LinearExpr eq;
  for (size_t i = 0; i < grid.size(); ++i) {
    def.add(out.weights[i], -grid[i]);
    conv.add(out.weights[i], 1);
    eq.add(out.weights[i], SignedSquare(grid[i]));
  }
  for (size_t i = 0; i < from.grid.size(); ++i) {
    eq.add(from.weights[i], -resistance * from.grid[i] * from.grid[i]);
  }
  for (size_t i = 0; i < to.grid.size(); ++i) {
    eq.add(to.weights[i], resistance * to.grid[i] * to.grid[i]);
  }
  model.add_constraint(def, Sense::kEqual, 0, "sos2_flow_def");
  model.add_constraint(conv, Sense::kEqual, 1, "sos2_flow_conv");
  model.add_constraint(eq, Sense::kEqual, 0, "sos2_flow_eq");
  model.add_sos2("lambda[" + JoinIndex(index) + "]", out.weights, grid);
  return out;
}

SinglePipelinePwl single_pipeline_pwl(PwlMethod method, const std::vector<Rational>& flow_grid,
                                      const std::vector<Rational>& pressure_grid_from,
                                      const std::vector<Rational>& pressure_grid_to,
                                      const Rational& resistance) {
  validate_breakpoints(pressure_grid_from, "pressure grid");
  validate_breakpoints(pressure_grid_to, "pressure grid");
  SinglePipelinePwl out{MipModel(method == PwlMethod::kIncremental ? "inc_single_pipeline"
                                                                   : "sos2_single_pipeline"),
                        {}, {}, {}};
  MipModel& m = out.model;
  const VarId f = m.add_continuous(VarLabel{"f", {"k1", "l1"}}, std::nullopt, std::nullopt);
  const VarId pm = m.add_continuous(VarLabel{"p", {"k1", "m"}}, pressure_grid_from.front(),
                                    pressure_grid_from.back());
  const VarId pn = m.add_continuous(VarLabel{"p", {"k1", "n"}}, pressure_grid_to.front(),
                                    pressure_grid_to.back());
  if (method == PwlMethod::kIncremental) {
    out.from = emit_inc_node(m, {"k1", "m"}, pm, pressure_grid_from);
    out.to = emit_inc_node(m, {"k1", "n"}, pn, pressure_grid_to);
    out.pipeline = emit_inc_pipeline(m, {"k1", "l1"}, f, flow_grid, resistance, out.from, out.to);
  } else {
    out.from = emit_sos2_node(m, {"k1", "m"}, pm, pressure_grid_from);
    out.to = emit_sos2_node(m, {"k1", "n"}, pn, pressure_grid_to);
    out.pipeline = emit_sos2_pipeline(m, {"k1", "l1"}, f, flow_grid, resistance, out.from, out.to);
  }
  return out;
}

}  // namespace gasmip
