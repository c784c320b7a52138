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

#include "gasmip/esom.hpp"

#include <chrono>
#include <cmath>

namespace gasmip {

const char* ToString(Method method) {
  switch (method) {
    case Method::kInc:
      return "inc";
    case Method::kSos2:
      return "sos2";
    case Method::kZ:
      return "z";
  }
  return "?";
}

Method ParseMethod(const std::string& text) {
  if (text == "inc" || text == "INC") return Method::kInc;
  if (text == "sos2" || text == "SOS2") return Method::kSos2;
  if (text == "z" || text == "Z") return Method::kZ;
  throw std::invalid_argument("unknown method '" + text + "' (expected inc, sos2 or z)");
}

Rational default_reference_pressure_sum(const Instance& inst, const Pipeline& p) {
  const GasNode& m = inst.nodes.at(static_cast<size_t>(inst.node_index(p.from)));
  const GasNode& n = inst.nodes.at(static_cast<size_t>(inst.node_index(p.to)));
  return std::min(m.p_min, n.p_min) + std::max(m.p_max, n.p_max);
}

PiecewiseGrid z_grid_for(const Instance& inst, const Pipeline& p, int segments,
                         const std::optional<Rational>& reference_pressure_sum) {
  const Rational range = pressure_range(inst, p);
  GridRequest req;
  req.resistance = p.resistance;
  req.pressure_range = range.get_num() / range.get_den();  // floor for nonnegative values
  req.n_segments = segments;
  req.reference_pressure_sum = reference_pressure_sum.value_or(default_reference_pressure_sum(inst, p));
  try {
    return generate_grid(req);
  } catch (const GridError& e) {
    throw ModelError("pipeline " + p.id + ": " + e.what());
  }
}

MethodChoice make_method_choice(const Instance& inst, Method method, const GridOptions& options,
                                const ZParamsCache* cache, std::vector<PrecomputeLog>* log,
                                std::vector<std::string>* warnings) {
  MethodChoice choice;
  choice.method = method;
  if (method != Method::kZ) {
    if (options.flow_segments < 2 || options.flow_segments % 2 != 0) {
      throw ModelError("flow_segments must be even and >= 2");
    }
    std::vector<bool> used(inst.nodes.size(), false);
    for (const Pipeline& p : inst.pipelines) {
      choice.flow_grids.push_back(symmetric_flow_grid(p.capacity, options.flow_segments));
      used[static_cast<size_t>(inst.node_index(p.from))] = true;
      used[static_cast<size_t>(inst.node_index(p.to))] = true;
    }
    for (size_t m = 0; m < inst.nodes.size(); ++m) {
      choice.pressure_grids.push_back(
          used[m] ? pressure_grid(inst.nodes[m].p_min, inst.nodes[m].p_max, options.pressure_segments)
                  : std::vector<Rational>{});
    }
    return choice;
  }
  std::vector<size_t> missing;
  std::vector<PiecewiseGrid> todo;
  for (const Pipeline& p : inst.pipelines) {
    choice.z_grids.push_back(z_grid_for(inst, p, options.z_segments, options.reference_pressure_sum));
  }
  choice.z_params.resize(choice.z_grids.size());
  for (size_t l = 0; l < choice.z_grids.size(); ++l) {
    std::optional<ZParams> hit;
    if (cache != nullptr) {
      std::string warning;
      hit = cache->lookup(choice.z_grids[l], &warning);
      if (!warning.empty() && warnings != nullptr) warnings->push_back(warning);
    }
    if (hit) {
      choice.z_params[l] = std::move(*hit);
      if (log != nullptr) log->push_back({inst.pipelines[l].id, true, 0.0, choice.z_params[l].tuples.size()});
    } else {
      missing.push_back(l);
      todo.push_back(choice.z_grids[l]);
    }
  }
  if (!todo.empty()) {
    // Identical grids (parallel pipelines of one type) are computed once.
    std::vector<PiecewiseGrid> unique;
    std::vector<size_t> slot(todo.size());
    for (size_t i = 0; i < todo.size(); ++i) {
      size_t j = 0;
      while (j < unique.size() && !(unique[j] == todo[i])) ++j;
      if (j == unique.size()) unique.push_back(todo[i]);
      slot[i] = j;
    }
    std::vector<double> seconds(unique.size());
    std::vector<ZParams> computed(unique.size());
    if (options.threads == 1) {
      for (size_t j = 0; j < unique.size(); ++j) {
        const auto t0 = std::chrono::steady_clock::now();
        computed[j] = compute_z_tables(unique[j]);
        seconds[j] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
    } else {
      const auto t0 = std::chrono::steady_clock::now();
      computed = compute_z_tables_parallel(unique, options.threads);
      const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (double& s : seconds) s = total / static_cast<double>(unique.size());
    }
    for (size_t i = 0; i < todo.size(); ++i) {
      choice.z_params[missing[i]] = computed[slot[i]];
      if (log != nullptr) {
        log->push_back({inst.pipelines[missing[i]].id, false, seconds[slot[i]], computed[slot[i]].tuples.size()});
      }
    }
    if (cache != nullptr) cache->store(computed);
  }
  return choice;
}

namespace {

std::string K(int k) { return "k" + std::to_string(k + 1); }

std::vector<std::vector<VarId>> Grid2(int rows, size_t cols) {
  return std::vector<std::vector<VarId>>(static_cast<size_t>(rows), std::vector<VarId>(cols));
}

}  // namespace

EsomModel build_esom(const Instance& inst, const MethodChoice& choice) {
  validate_instance(inst);
  const int K_ = inst.horizon;
  const size_t NL = inst.pipelines.size();
  const size_t NM = inst.nodes.size();
  if (choice.method == Method::kZ) {
    if (choice.z_grids.size() != NL || choice.z_params.size() != NL) {
      throw ModelError("Z method needs a grid and parameters for every pipeline");
    }
  } else {
    if (choice.flow_grids.size() != NL) throw ModelError("missing flow grid for a pipeline");
    if (choice.pressure_grids.size() != NM) throw ModelError("missing pressure grid for a node");
    for (const Pipeline& p : inst.pipelines) {
      for (const std::string& id : {p.from, p.to}) {
        if (choice.pressure_grids[static_cast<size_t>(inst.node_index(id))].empty()) {
          throw ModelError("missing pressure grid for node " + id);
        }
      }
    }
  }

  EsomModel out;
  out.method = choice.method;
  out.model = MipModel(inst.name + "_" + ToString(choice.method));
  MipModel& m = out.model;
  EsomVars& v = out.vars;
  for (const std::string& id : isolated_demand_nodes(inst)) {
    out.warnings.push_back("gas node " + id + " has demand but no supply path; only non-supplied gas can serve it");
  }

  const size_t NS = inst.sources.size();
  const size_t NG = inst.generators.size();
  const size_t NC = inst.compressors.size();
  const size_t NB = inst.buses.size();
  const size_t NE = inst.lines.size();
  v.p_gas = Grid2(K_, NS);
  v.ns_gas = Grid2(K_, NM);
  v.pressure = Grid2(K_, NM);
  v.p_elec = Grid2(K_, NG);
  v.p_above = Grid2(K_, NG);
  v.u = Grid2(K_, NG);
  v.y = Grid2(K_, NG);
  v.z = Grid2(K_, NG);
  v.cs = Grid2(K_, NG);
  v.linepack = Grid2(K_, NL);
  v.flow = Grid2(K_, NL);
  v.flow_in = Grid2(K_, NL);
  v.flow_out = Grid2(K_, NL);
  v.flow_comp = Grid2(K_, NC);
  v.ns_elec = Grid2(K_, NB);
  v.theta = Grid2(K_, NB);
  v.line_flow = Grid2(K_, NE);

  LinearExpr objective;
  for (int k = 0; k < K_; ++k) {
    const size_t ku = static_cast<size_t>(k);
    // Sources and non-supplied gas.
    for (size_t s = 0; s < NS; ++s) {
      v.p_gas[ku][s] = m.add_continuous({"pG", {K(k), inst.sources[s].id}}, Rational(0), inst.sources[s].capacity);
      objective.add(v.p_gas[ku][s], inst.sources[s].cost);
    }
    for (size_t n = 0; n < NM; ++n) {
      v.ns_gas[ku][n] = m.add_continuous({"nsG", {K(k), inst.nodes[n].id}}, Rational(0), inst.demand_gas[ku][n]);
      objective.add(v.ns_gas[ku][n], inst.cost_gas_ns);
      v.pressure[ku][n] = m.add_continuous({"p", {K(k), inst.nodes[n].id}}, inst.nodes[n].p_min, inst.nodes[n].p_max);
    }
    // Generators; renewables limited by capacity factor.
    for (size_t g = 0; g < NG; ++g) {
      const Generator& gen = inst.generators[g];
      if (gen.type == GeneratorType::kRenewable) {
        v.p_elec[ku][g] = m.add_continuous({"pE", {K(k), gen.id}}, Rational(0), gen.p_max * inst.capacity_factor[ku][g]);
      } else {
        v.p_elec[ku][g] = m.add_continuous({"pE", {K(k), gen.id}}, Rational(0), gen.p_max);
        v.p_above[ku][g] = m.add_continuous({"pHat", {K(k), gen.id}}, Rational(0), gen.p_max - gen.p_min);
        v.u[ku][g] = m.add_binary({"u", {K(k), gen.id}});
        v.y[ku][g] = m.add_binary({"y", {K(k), gen.id}});
        v.z[ku][g] = m.add_binary({"z", {K(k), gen.id}});
        v.cs[ku][g] = m.add_continuous({"csG", {K(k), gen.id}});
      }
      objective.add(v.p_elec[ku][g], gen.cost_om);
    }
    for (size_t l = 0; l < NL; ++l) {
      const std::string& id = inst.pipelines[l].id;
      v.linepack[ku][l] = m.add_continuous({"lp", {K(k), id}});
      v.flow[ku][l] = m.add_continuous({"f", {K(k), id}}, std::nullopt, std::nullopt);
      v.flow_in[ku][l] = m.add_continuous({"fIn", {K(k), id}}, std::nullopt, std::nullopt);
      v.flow_out[ku][l] = m.add_continuous({"fOut", {K(k), id}}, std::nullopt, std::nullopt);
    }
    for (size_t c = 0; c < NC; ++c) {
      v.flow_comp[ku][c] = m.add_continuous({"fC", {K(k), inst.compressors[c].id}}, Rational(0),
                                            inst.compressors[c].capacity);
    }
    for (size_t b = 0; b < NB; ++b) {
      const std::string& id = inst.buses[b].id;
      v.ns_elec[ku][b] = m.add_continuous({"nsE", {K(k), id}}, Rational(0), inst.demand_electric[ku][b]);
      objective.add(v.ns_elec[ku][b], inst.cost_electricity_ns);
      if (id == inst.slack_bus) {
        v.theta[ku][b] = m.add_continuous({"theta", {K(k), id}}, Rational(0), Rational(0));
      } else {
        v.theta[ku][b] = m.add_continuous({"theta", {K(k), id}}, std::nullopt, std::nullopt);
      }
    }
    for (size_t e = 0; e < NE; ++e) {
      v.line_flow[ku][e] = m.add_continuous({"pL", {K(k), inst.lines[e].id}}, -inst.lines[e].limit, inst.lines[e].limit);
    }
  }
  m.set_objective(objective);

  // Unit commitment and gas conversion.
  for (size_t g = 0; g < NG; ++g) {
    const Generator& gen = inst.generators[g];
    if (gen.type != GeneratorType::kThermal) continue;
    const Rational span = gen.p_max - gen.p_min;
    for (int k = 0; k < K_; ++k) {
      const size_t ku = static_cast<size_t>(k);
      const VarId pe = v.p_elec[ku][g], ph = v.p_above[ku][g], u = v.u[ku][g], y = v.y[ku][g], z = v.z[ku][g];
      m.add_constraint(LinearExpr(pe).add(u, -gen.p_min).add(ph, -1), Sense::kEqual, 0, "output_split");
      m.add_constraint(LinearExpr(ph).add(u, -span).add(y, span), Sense::kLessEqual, 0, "startup_cap");
      LinearExpr e7(ph);
      e7.add(u, -span);
      if (k + 1 < K_) e7.add(v.z[ku + 1][g], span);
      m.add_constraint(e7, Sense::kLessEqual, 0, "shutdown_cap");
      // Hour 0 is the configured initial state.
      LinearExpr e8(ph);
      e8.add(u, -gen.ramp_up);
      LinearExpr e9(ph);
      LinearExpr e10(u);
      e10.add(y, -1).add(z, 1);
      if (k == 0) {
        e8.add_constant(-gen.initial_above_min);
        e9.add_constant(-gen.initial_above_min);
        e9.add_constant(gen.initial_on ? gen.ramp_down : Rational(0));
        e10.add_constant(gen.initial_on ? Rational(-1) : Rational(0));
      } else {
        e8.add(v.p_above[ku - 1][g], -1);
        e9.add(v.p_above[ku - 1][g], -1).add(v.u[ku - 1][g], gen.ramp_down);
        e10.add(v.u[ku - 1][g], -1);
      }
      m.add_constraint(e8, Sense::kLessEqual, 0, "ramp_up");
      m.add_constraint(e9, Sense::kGreaterEqual, 0, "ramp_down");
      m.add_constraint(e10, Sense::kEqual, 0, "commitment_logic");
      m.add_constraint(LinearExpr(y).add(u, -1), Sense::kLessEqual, 0, "startup_link");
      m.add_constraint(LinearExpr(z).add(u, 1), Sense::kLessEqual, 1, "shutdown_link");
      m.add_constraint(LinearExpr(v.cs[ku][g], inst.heating_value).add(pe, -gen.consumption), Sense::kEqual, 0,
                       "gas_use");
    }
  }

  // Linepack.
  for (size_t l = 0; l < NL; ++l) {
    const Pipeline& p = inst.pipelines[l];
    const size_t a = static_cast<size_t>(inst.node_index(p.from));
    const size_t b = static_cast<size_t>(inst.node_index(p.to));
    for (int k = 0; k < K_; ++k) {
      const size_t ku = static_cast<size_t>(k);
      m.add_constraint(LinearExpr(v.linepack[ku][l]).add(v.pressure[ku][a], -p.linepack / 2).add(v.pressure[ku][b], -p.linepack / 2),
                       Sense::kEqual, 0, "linepack_pressure");
      LinearExpr soc(v.linepack[ku][l]);
      soc.add(v.flow_in[ku][l], -1).add(v.flow_out[ku][l], 1);
      if (k == 0) {
        soc.add_constant(-p.linepack_init * p.efficiency);
      } else {
        soc.add(v.linepack[ku - 1][l], -p.efficiency);
      }
      m.add_constraint(soc, Sense::kEqual, 0, "linepack_balance");
      m.add_constraint(LinearExpr(v.flow[ku][l]).add(v.flow_in[ku][l], Rational(-1, 2)).add(v.flow_out[ku][l], Rational(-1, 2)),
                       Sense::kEqual, 0, "flow_average");
    }
    m.add_constraint(LinearExpr(v.linepack[0][l]), Sense::kEqual, p.linepack_init, "linepack_boundary");
    if (K_ > 1) m.add_constraint(LinearExpr(v.linepack[static_cast<size_t>(K_ - 1)][l]), Sense::kEqual, p.linepack_init, "linepack_boundary");
  }

  // Compressor ratios; compressor capacity is a variable bound.
  for (size_t c = 0; c < NC; ++c) {
    const Compressor& cp = inst.compressors[c];
    const size_t a = static_cast<size_t>(inst.node_index(cp.from));
    const size_t b = static_cast<size_t>(inst.node_index(cp.to));
    for (int k = 0; k < K_; ++k) {
      const size_t ku = static_cast<size_t>(k);
      m.add_constraint(LinearExpr(v.pressure[ku][b]).add(v.pressure[ku][a], -cp.ratio), Sense::kLessEqual, 0, "compression_ratio");
    }
  }

  // Nodal gas balance.
  for (int k = 0; k < K_; ++k) {
    const size_t ku = static_cast<size_t>(k);
    for (size_t n = 0; n < NM; ++n) {
      const std::string& id = inst.nodes[n].id;
      LinearExpr bal;
      for (size_t s = 0; s < NS; ++s) {
        if (inst.sources[s].node == id) bal.add(v.p_gas[ku][s], 1);
      }
      for (size_t l = 0; l < NL; ++l) {
        if (inst.pipelines[l].to == id) bal.add(v.flow_out[ku][l], 1);
        if (inst.pipelines[l].from == id) bal.add(v.flow_in[ku][l], -1);
      }
      for (size_t c = 0; c < NC; ++c) {
        const Compressor& cp = inst.compressors[c];
        if (cp.to == id) bal.add(v.flow_comp[ku][c], 1);
        if (cp.from == id) bal.add(v.flow_comp[ku][c], -1 - cp.consumption);
      }
      bal.add(v.ns_gas[ku][n], 1);
      for (size_t g = 0; g < NG; ++g) {
        const Generator& gen = inst.generators[g];
        if (gen.type == GeneratorType::kThermal && gen.node == id) bal.add(v.cs[ku][g], -1);
      }
      m.add_constraint(bal, Sense::kEqual, inst.demand_gas[ku][n], "gas_balance");
    }
  }

  // DC power flow and bus balance.
  for (int k = 0; k < K_; ++k) {
    const size_t ku = static_cast<size_t>(k);
    for (size_t e = 0; e < NE; ++e) {
      const Line& ln = inst.lines[e];
      const size_t a = static_cast<size_t>(inst.bus_index(ln.from));
      const size_t b = static_cast<size_t>(inst.bus_index(ln.to));
      m.add_constraint(LinearExpr(v.line_flow[ku][e]).add(v.theta[ku][a], -ln.susceptance).add(v.theta[ku][b], ln.susceptance),
                       Sense::kEqual, 0, "dcpf_flow");
    }
    for (size_t b = 0; b < NB; ++b) {
      const std::string& id = inst.buses[b].id;
      LinearExpr bal;
      for (size_t g = 0; g < NG; ++g) {
        if (inst.generators[g].bus == id) bal.add(v.p_elec[ku][g], 1);
      }
      for (size_t e = 0; e < NE; ++e) {
        if (inst.lines[e].to == id) bal.add(v.line_flow[ku][e], 1);
        if (inst.lines[e].from == id) bal.add(v.line_flow[ku][e], -1);
      }
      bal.add(v.ns_elec[ku][b], 1);
      m.add_constraint(bal, Sense::kEqual, inst.demand_electric[ku][b], "bus_balance");
    }
  }

  // Flow-pressure linearization replacing the general flow equation.
  if (choice.method == Method::kZ) v.z_blocks.assign(static_cast<size_t>(K_), {});
  for (int k = 0; k < K_; ++k) {
    const size_t ku = static_cast<size_t>(k);
    if (choice.method == Method::kZ) {
      for (size_t l = 0; l < NL; ++l) {
        const Pipeline& p = inst.pipelines[l];
        const GasNode& na = inst.nodes[static_cast<size_t>(inst.node_index(p.from))];
        const GasNode& nb = inst.nodes[static_cast<size_t>(inst.node_index(p.to))];
        ZAttachment at{{K(k), p.id},
                       v.flow[ku][l],
                       v.pressure[ku][static_cast<size_t>(inst.node_index(p.from))],
                       v.pressure[ku][static_cast<size_t>(inst.node_index(p.to))],
                       std::min(na.p_min, nb.p_min),
                       std::max(na.p_max, nb.p_max)};
        v.z_blocks[ku].push_back(emit_z(m, at, choice.z_grids[l], choice.z_params[l], choice.z_options));
      }
      continue;
    }
    const bool inc = choice.method == Method::kInc;
    std::vector<PwlNodeVars> nodes(NM);
    for (size_t n = 0; n < NM; ++n) {
      if (choice.pressure_grids[n].empty()) continue;
      const std::vector<std::string> index{K(k), inst.nodes[n].id};
      nodes[n] = inc ? emit_inc_node(m, index, v.pressure[ku][n], choice.pressure_grids[n])
                     : emit_sos2_node(m, index, v.pressure[ku][n], choice.pressure_grids[n]);
    }
    for (size_t l = 0; l < NL; ++l) {
      const Pipeline& p = inst.pipelines[l];
      const PwlNodeVars& a = nodes[static_cast<size_t>(inst.node_index(p.from))];
      const PwlNodeVars& b = nodes[static_cast<size_t>(inst.node_index(p.to))];
      const std::vector<std::string> index{K(k), p.id};
      if (inc) {
        emit_inc_pipeline(m, index, v.flow[ku][l], choice.flow_grids[l], p.resistance, a, b);
      } else {
        emit_sos2_pipeline(m, index, v.flow[ku][l], choice.flow_grids[l], p.resistance, a, b);
      }
    }
  }
  return out;
}

double max_gas_balance_residual(const Instance& inst, const EsomModel& esom, const std::vector<double>& x) {
  const EsomVars& v = esom.vars;
  auto val = [&](VarId id) { return x.at(static_cast<size_t>(id.value)); };
  double worst = 0.0;
  for (int k = 0; k < inst.horizon; ++k) {
    const size_t ku = static_cast<size_t>(k);
    for (size_t n = 0; n < inst.nodes.size(); ++n) {
      const std::string& id = inst.nodes[n].id;
      double supply = val(v.ns_gas[ku][n]);
      double demand = ToDouble(inst.demand_gas[ku][n]);
      for (size_t s = 0; s < inst.sources.size(); ++s) {
        if (inst.sources[s].node == id) supply += val(v.p_gas[ku][s]);
      }
      for (size_t l = 0; l < inst.pipelines.size(); ++l) {
        if (inst.pipelines[l].to == id) supply += val(v.flow_out[ku][l]);
        if (inst.pipelines[l].from == id) demand += val(v.flow_in[ku][l]);
      }
      for (size_t c = 0; c < inst.compressors.size(); ++c) {
        const Compressor& cp = inst.compressors[c];
        const double fc = val(v.flow_comp[ku][c]);
        if (cp.to == id) supply += fc;
        if (cp.from == id) demand += fc * (1.0 + ToDouble(cp.consumption));
      }
      for (size_t g = 0; g < inst.generators.size(); ++g) {
        const Generator& gen = inst.generators[g];
        if (gen.type == GeneratorType::kThermal && gen.node == id) demand += val(v.cs[ku][g]);
      }
      worst = std::max(worst, std::fabs(supply - demand));
    }
  }
  return worst;
}

}  // namespace gasmip
