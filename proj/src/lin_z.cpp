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

#include "gasmip/lin_z.hpp"

namespace gasmip {
namespace {

VarLabel Label(const std::string& family, const std::vector<std::string>& index,
               std::optional<size_t> point = std::nullopt) {
  VarLabel label{family, index};
  if (point) label.index.push_back("z" + std::to_string(*point + 1));
  return label;
}

}  // namespace

ZPipelineVars emit_z(MipModel& model, const ZAttachment& at, const PiecewiseGrid& grid,
                     const ZParams& params, const ZOptions& options) {
  validate_grid(grid);
  if (params.grid_hash != grid.hash() || !(params.grid == grid)) {
    throw ModelError("Z parameters were computed for grid " + params.grid_hash +
                     ", not for grid " + grid.hash());
  }
  const size_t n = grid.size();
  const auto& F = grid.F;
  const auto& P = grid.P;
  const auto integer_kind = options.integers_as_continuous ? VarKind::kContinuous
                                                           : VarKind::kBinary;

  ZPipelineVars vars;
  vars.f = at.f;
  vars.f_plus = model.add_continuous(Label("f_plus", at.index));
  vars.f_minus = model.add_continuous(Label("f_minus", at.index));
  vars.p_plus = model.add_continuous(Label("p_plus", at.index));
  vars.p_minus = model.add_continuous(Label("p_minus", at.index));
  for (size_t z = 0; z < n; ++z) {
    vars.gamma.push_back(model.add_continuous(Label("gamma", at.index, z), Rational(0), Rational(1)));
  }
  for (size_t z = 0; z < n; ++z) {
    vars.delta.push_back(
        model.add_variable(VarSpec{Label("delta", at.index, z), integer_kind, Rational(0), Rational(1)}));
  }
  vars.xi = model.add_variable(VarSpec{Label("xi", at.index), integer_kind, Rational(0), Rational(1)});

  const VarId fp = vars.f_plus;
  const VarId fm = vars.f_minus;
  const VarId pp = vars.p_plus;
  const VarId pm = vars.p_minus;
  const auto& g = vars.gamma;
  const auto& d = vars.delta;
  const size_t last = n - 1;

  // f = f+ - f-
  model.add_constraint(LinearExpr(at.f) - LinearExpr(fp) + LinearExpr(fm), Sense::kEqual, 0, "z_flow_split");
  // p_m - p_n = p+ - p-
  model.add_constraint(LinearExpr(at.p_m) - LinearExpr(at.p_n) - LinearExpr(pp) + LinearExpr(pm),
                       Sense::kEqual, 0, "z_pressure_split");
  // p+ + p- = sum_z P_z gamma_z
  {
    LinearExpr e = LinearExpr(pp) + LinearExpr(pm);
    for (size_t z = 0; z < n; ++z) e.add(g[z], -Rational(P[z]));
    model.add_constraint(e, Sense::kEqual, 0, "z_gradient_sum");
  }
  // Flow and gradient sums lie on the chord fan through the last point.
  {
    int s = sgn(P[last] - F[last]);
    if (s == 0) s = 1;
    LinearExpr e;
    e.add(fp, s * Rational(P[last]));
    e.add(fm, s * Rational(P[last]));
    e.add(pp, -s * Rational(F[last]));
    e.add(pm, -s * Rational(F[last]));
    for (size_t z = 0; z < last; ++z) {
      e.add(g[z], -s * Rational(P[last] * F[z] - F[last] * P[z]));
    }
    model.add_constraint(e, Sense::kEqual, 0, "z_chord");
  }
  // Convexity of gamma and delta.
  {
    LinearExpr eg;
    LinearExpr ed;
    for (size_t z = 0; z < n; ++z) {
      eg.add(g[z], 1);
      ed.add(d[z], 1);
    }
    model.add_constraint(eg, Sense::kEqual, 1, "z_convexity");
    model.add_constraint(ed, Sense::kEqual, 1, "z_convexity");
  }
  // The last point cannot share weight with anything but its neighbour.
  if (n > 3) {
    LinearExpr e;
    for (size_t z = 0; z < last; ++z) e.add(g[z], 1);
    model.add_constraint(e, Sense::kLessEqual, 1, "z_last_point");
  }
  // Adjacency between gamma and the segment selector delta.
  for (size_t z = 0; z < last; ++z) {
    LinearExpr e;
    for (size_t zt = z + 1; zt < n; ++zt) {
      e.add(d[zt], 1);
      e.add(g[zt], -1);
    }
    model.add_constraint(e, Sense::kLessEqual, 0, "z_adjacency_upper");
  }
  for (size_t z = 0; z < last; ++z) {
    LinearExpr e;
    for (size_t zt = z + 1; zt < n; ++zt) e.add(d[zt], 1);
    for (size_t zt = z + 2; zt < n; ++zt) e.add(g[zt], -1);
    model.add_constraint(e, Sense::kGreaterEqual, 0, "z_adjacency_lower");
  }
  // Bounds on the reverse parts at grid points after the first.
  for (size_t z = 1; z < n; ++z) {
    LinearExpr e;
    e.add(fm, Rational(P[z]));
    e.add(pm, -Rational(F[z]));
    for (size_t zt = 0; zt < n; ++zt) {
      if (params.abc.A.has(z, zt)) e.add(g[zt], -Rational(params.abc.A.at(z, zt)));
    }
    model.add_constraint(e, Sense::kGreaterEqual, 0, "z_minus_lower");
  }
  for (size_t z = 1; z < n; ++z) {
    LinearExpr e;
    e.add(fm, Rational(P[z]));
    e.add(pm, -Rational(F[z]));
    for (size_t zt = 0; zt < n; ++zt) {
      Integer coef = 0;
      if (params.abc.B.has(zt, z)) coef += params.abc.B.at(zt, z);
      if (params.abc.C.has(z, zt)) coef -= params.abc.C.at(z, zt);
      e.add(g[zt], -Rational(coef));
    }
    model.add_constraint(e, Sense::kLessEqual, 0, "z_minus_upper");
  }
  // Cut pairs.
  LinearExpr xi_expr(vars.xi);
  if (options.xi_reverse_is_one) {
    xi_expr = LinearExpr();
    xi_expr.add(vars.xi, -1);
    xi_expr.add_constant(1);
  }
  for (const ZTuple& t : params.tuples) {
    if (t.rhs == 0) continue;
    const int s = sgn(t.sgn);
    const Rational rhs(t.rhs);
    {
      LinearExpr e;
      e.add(fm, -s * Rational(t.u));
      e.add(pm, s * Rational(t.v));
      for (size_t z = 1; z < n; ++z) e.add(g[z], Rational(t.D[z] + t.E[z]));
      e.add(xi_expr, rhs);  // ... <= -xi * rhs
      model.add_constraint(e, Sense::kLessEqual, 0, "z_cut_a");
    }
    {
      LinearExpr e;
      e.add(fm, s * Rational(t.u));
      e.add(pm, -s * Rational(t.v));
      for (size_t z = 1; z < n; ++z) e.add(g[z], Rational(t.Fc[z]));
      e.add(xi_expr, -rhs);  // ... <= -rhs * (1 - xi)
      model.add_constraint(e, Sense::kLessEqual, -rhs, "z_cut_b");
    }
  }
  // Pressure bounds seen from the receiving node.
  model.add_constraint(LinearExpr(at.p_n) - LinearExpr(pm), Sense::kGreaterEqual, at.p_lower,
                       "z_pressure_lower");
  {
    LinearExpr e = LinearExpr(at.p_n) - LinearExpr(pm);
    for (size_t z = 1; z < n; ++z) e.add(g[z], Rational(P[z]));
    model.add_constraint(e, Sense::kLessEqual, at.p_upper, "z_pressure_upper");
  }
  return vars;
}

namespace {

template <typename T>
ZDecoded Decode(const std::vector<T>& values, const ZPipelineVars& vars, const ZOptions& options,
                const T& half) {
  auto at = [&](VarId id) -> const T& { return values.at(static_cast<size_t>(id.value)); };
  ZDecoded out;
  out.flow = Rational(at(vars.f_plus)) - Rational(at(vars.f_minus));
  out.gradient = Rational(at(vars.p_plus)) - Rational(at(vars.p_minus));
  const bool xi_high = at(vars.xi) > half;
  out.forward = options.xi_reverse_is_one ? !xi_high : xi_high;
  return out;
}

}  // namespace

ZDecoded decode_z(const std::vector<Rational>& values, const ZPipelineVars& vars,
                  const ZOptions& options) {
  return Decode<Rational>(values, vars, options, Rational(1, 2));
}

ZDecoded decode_z(const std::vector<double>& values, const ZPipelineVars& vars,
                  const ZOptions& options) {
  return Decode<double>(values, vars, options, 0.5);
}

SinglePipelineZ single_pipeline_z(const PiecewiseGrid& grid, const ZParams& params,
                                  const Rational& p_lower, const Rational& p_upper,
                                  const ZOptions& options) {
  SinglePipelineZ out{MipModel("z_single_pipeline"), {}, {}, {}};
  const std::vector<std::string> index{"k1", "l1"};
  const VarId f = out.model.add_continuous(VarLabel{"f", index}, std::nullopt, std::nullopt);
  out.p_m = out.model.add_continuous(VarLabel{"p", {"k1", "m"}}, p_lower, p_upper);
  out.p_n = out.model.add_continuous(VarLabel{"p", {"k1", "n"}}, p_lower, p_upper);
  out.vars = emit_z(out.model, ZAttachment{index, f, out.p_m, out.p_n, p_lower, p_upper}, grid,
                    params, options);
  return out;
}

}  // namespace gasmip
