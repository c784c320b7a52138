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

#include "gasmip/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gasmip/external_solver.hpp"
#include "gasmip/lin_pwl.hpp"
#include "gasmip/lin_z.hpp"
#include "gasmip/lp.hpp"

namespace gasmip {
namespace {

Integer FloorInteger(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational Reference(const PipelineCase& pc) { return pc.reference_pressure_sum.value_or(pc.p_min + pc.p_max); }

PiecewiseGrid CaseGrid(const PipelineCase& pc, int segments) {
  GridRequest req;
  req.resistance = pc.resistance;
  req.pressure_range = FloorInteger(pc.p_max - pc.p_min);
  req.n_segments = segments;
  req.reference_pressure_sum = Reference(pc);
  req.flow_cap = std::nullopt;
  return generate_grid(req);
}

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Linear interpolation of ys over increasing xs; clamps outside the range.
double Interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = static_cast<size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

std::string Num(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

PipelineCase pipeline_case(const Instance& inst, const std::string& pipeline_id) {
  for (const Pipeline& p : inst.pipelines) {
    if (p.id != pipeline_id) continue;
    const GasNode& a = inst.nodes.at(static_cast<size_t>(inst.node_index(p.from)));
    const GasNode& b = inst.nodes.at(static_cast<size_t>(inst.node_index(p.to)));
    PipelineCase pc;
    pc.id = p.id;
    pc.resistance = p.resistance;
    pc.capacity = p.capacity;
    pc.p_min = std::min(a.p_min, b.p_min);
    pc.p_max = std::max(a.p_max, b.p_max);
    pc.reference_pressure_sum = default_reference_pressure_sum(inst, p);
    return pc;
  }
  throw InstanceError("unknown pipeline '" + pipeline_id + "'");
}

MipModel single_pipeline_model(const PipelineCase& pc, Method method, int segments, bool integers_as_continuous,
                               std::vector<VarId>* marked) {
  if (method == Method::kZ) {
    const PiecewiseGrid grid = CaseGrid(pc, segments);
    const ZParams params = compute_z_tables(grid);
    ZOptions opt;
    opt.integers_as_continuous = integers_as_continuous;
    SinglePipelineZ sp = single_pipeline_z(grid, params, pc.p_min, pc.p_max, opt);
    if (marked != nullptr) {
      *marked = sp.vars.delta;
      marked->push_back(sp.vars.xi);
    }
    return std::move(sp.model);
  }
  const auto flow = symmetric_flow_grid(pc.capacity, 2 * segments);
  const auto press = pressure_grid(pc.p_min, pc.p_max, segments);
  SinglePipelinePwl sp = single_pipeline_pwl(method == Method::kInc ? PwlMethod::kIncremental : PwlMethod::kSos2,
                                             flow, press, press, pc.resistance);
  if (marked != nullptr) {
    marked->clear();
    for (const auto* b : {&sp.pipeline.binaries, &sp.from.binaries, &sp.to.binaries}) {
      marked->insert(marked->end(), b->begin(), b->end());
    }
  }
  MipModel out = integers_as_continuous ? relax(sp.model) : std::move(sp.model);
  return out;
}

TightnessReport tightness_report(const PipelineCase& pc, Method method, int segments,
                                 const EnumerationOptions& options) {
  TightnessReport rep;
  rep.method = method;
  rep.segments = segments;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<VarId> marked;
  MipModel model = single_pipeline_model(pc, method, segments, false, &marked);
  std::vector<Sos2Group> groups = model.sos2_groups();
  const MipModel relaxed = relax(model);
  const HPolyhedron h = to_hpolyhedron(relaxed, marked);
  EnumerationStats es;
  VertexSet vs;
  try {
    vs = enumerate_vertices(h, options, &es);
  } catch (const EnumerationBudgetExceeded& e) {
    rep.message = std::string("cannot be computed: ") + e.what();
    rep.reduced_dim = es.reduced_dim;
    rep.max_rays = es.max_rays;
    rep.seconds = Seconds(t0);
    return rep;
  }
  rep.computed = true;
  rep.reduced_dim = es.reduced_dim;
  rep.max_rays = es.max_rays;
  if (method == Method::kSos2) {
    // Fractional means the point violates some SOS2 condition.
    rep.n_vertices = vs.points.size();
    size_t total = 0;
    for (const auto& x : vs.points) {
      int bad = 0;
      for (const Sos2Group& g : groups) {
        int first = -1;
        int last = -1;
        for (size_t i = 0; i < g.members.size(); ++i) {
          if (x[static_cast<size_t>(g.members[i].value)] != 0) {
            if (first < 0) first = static_cast<int>(i);
            last = static_cast<int>(i);
          }
        }
        if (first >= 0 && last - first > 1) ++bad;
      }
      if (bad > 0) {
        ++rep.n_fractional;
        total += static_cast<size_t>(bad);
      }
    }
    rep.pct_fractional = rep.n_vertices ? 100.0 * static_cast<double>(rep.n_fractional) / static_cast<double>(rep.n_vertices) : 0.0;
    rep.avg_fractional = rep.n_fractional ? static_cast<double>(total) / static_cast<double>(rep.n_fractional) : 0.0;
  } else {
    const FractionalStats fs = fractional_stats(vs, h.binary_coords);
    rep.n_vertices = fs.n_vertices;
    rep.n_fractional = fs.n_fractional;
    rep.pct_fractional = fs.pct_fractional;
    rep.avg_fractional = fs.avg_fractional;
  }
  rep.seconds = Seconds(t0);
  return rep;
}

std::string format_tightness(const std::vector<TightnessReport>& reports, bool include_timing) {
  std::ostringstream o;
  o << fmt::format("{:<6} {:>8} {:>10} {:>12} {:>10} {:>9}\n", "method", "segments", "vertices", "%fractional",
                   "avg_frac", "seconds");
  for (const auto& r : reports) {
    const double secs = include_timing ? r.seconds : 0.0;
    if (!r.computed) {
      o << fmt::format("{:<6} {:>8} {:>10} {:>12} {:>10} {:>9.2f}  ({})\n", ToString(r.method), r.segments, "*", "*",
                       "*", secs, r.message);
      continue;
    }
    o << fmt::format("{:<6} {:>8} {:>10} {:>12.2f} {:>10.2f} {:>9.2f}\n", ToString(r.method), r.segments, r.n_vertices,
                     r.pct_fractional, r.avg_fractional, secs);
  }
  return o.str();
}

std::vector<QualityRow> quality_curve(const PipelineCase& pc, int z_segments, int pwl_segments, int samples) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const PiecewiseGrid zg = CaseGrid(pc, z_segments);
  const auto fgrid = symmetric_flow_grid(pc.capacity, 2 * pwl_segments);
  const auto pgrid = pressure_grid(pc.p_min, pc.p_max, pwl_segments);
  std::vector<double> px, px2, fx, fx2;
  for (const Rational& p : pgrid) {
    px.push_back(ToDouble(p));
    px2.push_back(ToDouble(p * p));
  }
  for (const Rational& f : fgrid) {
    fx.push_back(ToDouble(f));
    fx2.push_back(ToDouble(f * abs(f)));
  }
  const double R = ToDouble(pc.resistance);
  const double lo = ToDouble(pc.p_min);
  const double hi = ToDouble(pc.p_max);
  const Rational range = pc.p_max - pc.p_min;
  const std::vector<double> sums = {2 * lo, (3 * lo + hi) / 2, lo + hi, (lo + 3 * hi) / 2, 2 * hi};
  std::vector<QualityRow> rows;
  for (double s : sums) {
    for (int i = 0; i <= samples; ++i) {
      const Rational dpq = range * i / samples;
      QualityRow row;
      row.dp = ToDouble(dpq);
      row.p_sum = s;
      const double pm = (s + row.dp) / 2;
      const double pn = (s - row.dp) / 2;
      row.feasible = pm <= hi + 1e-12 && pn >= lo - 1e-12;
      row.exact_flow = std::sqrt(R * row.dp * s);
      row.z_flow = ToDouble(interpolate_flow(zg, dpq));
      if (row.feasible) {
        const double rhs = R * (Interp(px, px2, pm) - Interp(px, px2, pn));
        row.pwl_flow = Interp(fx2, fx, rhs);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string quality_csv(const std::vector<QualityRow>& rows) {
  std::ostringstream o;
  o << "dp,p_sum,feasible,exact_flow,z_flow,pwl_flow\n";
  for (const auto& r : rows) {
    o << Num(r.dp) << ',' << Num(r.p_sum) << ',' << (r.feasible ? 1 : 0) << ',' << Num(r.exact_flow) << ','
      << Num(r.z_flow) << ',' << (r.pwl_flow ? Num(*r.pwl_flow) : "") << '\n';
  }
  return o.str();
}

ModelStats inc_formula(int64_t L, int64_t M, int64_t F, int64_t P) {
  ModelStats s;
  s.n_constraints = 2 * (L + L * (F - 2) + M * (P - 2)) + M;
  s.n_continuous = L + M + L * (F - 1) + M * (P - 1);
  s.n_binary = L * (F - 2) + M * (P - 2);
  s.n_nonzeros = -1;
  return s;
}

ModelStats sos2_formula(int64_t L, int64_t M, int64_t F, int64_t P) {
  ModelStats s;
  s.n_constraints = 3 * L + 2 * M;
  s.n_continuous = L + M + L * F + M * P;
  s.n_binary = 0;
  s.n_sos2_groups = L + M;
  s.n_nonzeros = -1;
  return s;
}

ModelStats z_formula(int64_t L, int64_t M, int64_t Z) {
  ModelStats s;
  s.n_constraints = 9 * L + 8 * L * (Z - 1);
  s.n_continuous = 5 * L + M + L * Z;
  s.n_binary = L + L * Z;
  s.n_nonzeros = -1;
  return s;
}

std::vector<StatsRow> single_pipeline_stats(const PipelineCase& pc, int z_segments, int flow_segments,
                                            int pressure_segments) {
  std::vector<StatsRow> out;
  const auto flow = symmetric_flow_grid(pc.capacity, flow_segments);
  const auto press = pressure_grid(pc.p_min, pc.p_max, pressure_segments);
  const int64_t F = static_cast<int64_t>(flow.size());
  const int64_t P = static_cast<int64_t>(press.size());
  for (PwlMethod m : {PwlMethod::kIncremental, PwlMethod::kSos2}) {
    SinglePipelinePwl sp = single_pipeline_pwl(m, flow, press, press, pc.resistance);
    StatsRow row;
    row.method = m == PwlMethod::kIncremental ? "inc" : "sos2";
    row.stats = model_stats(sp.model);
    row.by_tag = constraint_counts_by_tag(sp.model);
    row.formula = m == PwlMethod::kIncremental ? inc_formula(1, 2, F, P) : sos2_formula(1, 2, F, P);
    out.push_back(std::move(row));
  }
  const PiecewiseGrid grid = CaseGrid(pc, z_segments);
  SinglePipelineZ sz = single_pipeline_z(grid, compute_z_tables(grid), pc.p_min, pc.p_max);
  StatsRow row;
  row.method = "z";
  row.stats = model_stats(sz.model);
  row.by_tag = constraint_counts_by_tag(sz.model);
  row.formula = z_formula(1, 2, static_cast<int64_t>(grid.size()));
  out.push_back(std::move(row));
  return out;
}

MipSolution solve_model(const MipModel& model, const SolveSettings& settings) {
  if (settings.solver == SolverKind::kInternal) return solve_mip(model, settings.mip);
  ExternalSolverConfig cfg;
  cfg.command = settings.external_command.empty() ? external_command_from_env() : settings.external_command;
  if (cfg.command.empty()) cfg.command = default_external_command();
  cfg.time_limit = settings.mip.time_limit;
  cfg.rel_gap = settings.mip.rel_gap;
  return solve_external(model, cfg);
}

RunReport make_run_report(const Instance& inst, const EsomModel& esom, const MipSolution& sol) {
  RunReport r;
  r.instance = inst.name;
  r.method = ToString(esom.method);
  r.status = sol.status;
  r.has_solution = sol.has_incumbent;
  r.objective = sol.objective;
  r.best_bound = sol.best_bound;
  r.gap = sol.gap;
  r.nodes = sol.nodes;
  r.wall_time = sol.wall_time;
  r.message = sol.message;
  if (!sol.has_incumbent) return r;
  const auto& x = sol.x;
  auto val = [&](VarId id) { return x.at(static_cast<size_t>(id.value)); };
  const EsomVars& v = esom.vars;
  for (size_t s = 0; s < inst.sources.size(); ++s) {
    double total = 0.0;
    for (int k = 0; k < inst.horizon; ++k) total += val(v.p_gas[static_cast<size_t>(k)][s]);
    r.gas_production.push_back({inst.sources[s].id, total});
  }
  for (size_t g = 0; g < inst.generators.size(); ++g) {
    double total = 0.0;
    for (int k = 0; k < inst.horizon; ++k) total += val(v.p_elec[static_cast<size_t>(k)][g]);
    r.generation.push_back({inst.generators[g].id, total});
  }
  for (int k = 0; k < inst.horizon; ++k) {
    const size_t ku = static_cast<size_t>(k);
    for (const VarId id : v.linepack[ku]) r.total_linepack += val(id);
    for (const VarId id : v.ns_gas[ku]) r.gas_not_supplied += val(id);
    for (const VarId id : v.ns_elec[ku]) r.power_not_supplied += val(id);
  }
  r.balance_residual = max_gas_balance_residual(inst, esom, x);
  return r;
}

std::string solution_csv(const Instance& inst, const EsomModel& esom, const std::vector<double>& x) {
  std::ostringstream o;
  o << "k,kind,entity,value\n";
  const EsomVars& v = esom.vars;
  auto emit = [&](int k, const char* kind, const std::string& entity, VarId id) {
    if (id.value < 0) return;
    o << (k + 1) << ',' << kind << ',' << entity << ',' << Num(x.at(static_cast<size_t>(id.value))) << '\n';
  };
  for (int k = 0; k < inst.horizon; ++k) {
    const size_t ku = static_cast<size_t>(k);
    for (size_t s = 0; s < inst.sources.size(); ++s) emit(k, "gas_production", inst.sources[s].id, v.p_gas[ku][s]);
    for (size_t g = 0; g < inst.generators.size(); ++g) {
      emit(k, "generation", inst.generators[g].id, v.p_elec[ku][g]);
      emit(k, "commitment", inst.generators[g].id, v.u[ku][g]);
      emit(k, "gas_consumption", inst.generators[g].id, v.cs[ku][g]);
    }
    for (size_t n = 0; n < inst.nodes.size(); ++n) {
      emit(k, "pressure", inst.nodes[n].id, v.pressure[ku][n]);
      emit(k, "gas_not_supplied", inst.nodes[n].id, v.ns_gas[ku][n]);
    }
    for (size_t l = 0; l < inst.pipelines.size(); ++l) {
      const std::string& id = inst.pipelines[l].id;
      emit(k, "linepack", id, v.linepack[ku][l]);
      emit(k, "flow", id, v.flow[ku][l]);
      emit(k, "inflow", id, v.flow_in[ku][l]);
      emit(k, "outflow", id, v.flow_out[ku][l]);
    }
    for (size_t c = 0; c < inst.compressors.size(); ++c) {
      emit(k, "compressor_flow", inst.compressors[c].id, v.flow_comp[ku][c]);
    }
    for (size_t b = 0; b < inst.buses.size(); ++b) {
      emit(k, "angle", inst.buses[b].id, v.theta[ku][b]);
      emit(k, "power_not_supplied", inst.buses[b].id, v.ns_elec[ku][b]);
    }
    for (size_t e = 0; e < inst.lines.size(); ++e) emit(k, "line_flow", inst.lines[e].id, v.line_flow[ku][e]);
  }
  return o.str();
}

std::string format_run_report(const RunReport& r, bool include_timing) {
  std::ostringstream o;
  o << "instance: " << r.instance << '\n' << "method: " << r.method << '\n' << "status: " << ToString(r.status) << '\n';
  if (r.has_solution) {
    o << "objective: " << Num(r.objective) << '\n'
      << "best_bound: " << Num(r.best_bound) << '\n'
      << "gap: " << Num(r.gap) << '\n';
  }
  o << "nodes: " << r.nodes << '\n';
  if (include_timing) o << "wall_time_s: " << fmt::format("{:.3f}", r.wall_time) << '\n';
  if (include_timing && r.speedup) o << "speedup: " << fmt::format("{:.3f}", *r.speedup) << '\n';
  if (r.has_solution) {
    o << "total_linepack: " << Num(r.total_linepack) << '\n';
    o << "gas_not_supplied: " << Num(r.gas_not_supplied) << '\n';
    o << "power_not_supplied: " << Num(r.power_not_supplied) << '\n';
    o << "max_gas_balance_residual: " << fmt::format("{:.3g}", r.balance_residual) << '\n';
    for (const auto& [id, v] : r.gas_production) o << "gas_production[" << id << "]: " << Num(v) << '\n';
    for (const auto& [id, v] : r.generation) o << "generation[" << id << "]: " << Num(v) << '\n';
  }
  if (!r.diagnostic.empty()) o << "diagnostic: " << r.diagnostic << '\n';
  if (!r.message.empty()) o << "message: " << r.message << '\n';
  return o.str();
}

std::string infeasibility_diagnostic(const EsomModel& esom) {
  const MipModel& src = esom.model;
  MipModel elastic(src.name() + "_elastic");
  for (const Variable& var : src.variables()) {
    elastic.add_variable({var.label, VarKind::kContinuous, var.lower, var.upper});
  }
  LinearExpr objective;
  std::vector<std::pair<VarId, VarId>> slack(src.constraints().size(), {VarId{}, VarId{}});
  for (size_t r = 0; r < src.constraints().size(); ++r) {
    const LinearConstraint& c = src.constraints()[r];
    LinearExpr e;
    for (const Term& t : c.terms) e.add(t.var, t.coef);
    if (c.tag == "gas_balance" || c.tag == "bus_balance") {
      const VarId up = elastic.add_continuous({"slack_up", {c.name}});
      const VarId dn = elastic.add_continuous({"slack_dn", {c.name}});
      e.add(up, 1).add(dn, -1);
      objective.add(up, 1).add(dn, 1);
      slack[r] = {up, dn};
    }
    elastic.add_constraint(e, c.sense, c.rhs, c.tag);
  }
  elastic.set_objective(objective);
  const LpSolution lp = solve_lp(elastic);
  if (lp.status == LpStatus::kInfeasible) {
    return "infeasible even with elastic balances; the conflict lies in linepack, pressure or linearization rows";
  }
  if (lp.status != LpStatus::kOptimal) return std::string("elastic LP ended with status ") + ToString(lp.status);
  for (size_t r = 0; r < slack.size(); ++r) {
    if (slack[r].first.value < 0) continue;
    const double s = lp.x[static_cast<size_t>(slack[r].first.value)] - lp.x[static_cast<size_t>(slack[r].second.value)];
    if (std::fabs(s) > 1e-7) {
      return fmt::format("first violated balance {} needs {:.6g} extra supply", src.constraints()[r].name, s);
    }
  }
  return "balances can be met in the LP relaxation; infeasibility comes from integrality";
}

Instance benchmark_instance(int index, unsigned seed, int horizon) {
  SyntheticSpec spec;
  spec.n_nodes = 2 + index % 3;
  const int max_pipes = spec.n_nodes * (spec.n_nodes - 1) / 2;
  spec.n_pipelines = std::min(1 + (index / 3) % 3 + (spec.n_nodes > 2 ? 1 : 0), std::min(3, max_pipes));
  spec.horizon = horizon;
  spec.with_power = true;
  spec.seed = seed + static_cast<unsigned>(index) * 7919u;
  Instance inst = synthetic_instance(spec);
  inst.name = fmt::format("bench{}_n{}_l{}_k{}", index + 1, spec.n_nodes, spec.n_pipelines, horizon);
  return inst;
}

std::vector<BenchmarkCase> run_benchmark(const BenchmarkOptions& options) {
  std::vector<BenchmarkCase> out;
  for (int i = 0; i < options.n_instances; ++i) {
    const Instance inst = benchmark_instance(i, options.seed, options.horizon);
    BenchmarkCase bc;
    bc.instance = inst.name;
    for (Method m : {Method::kInc, Method::kSos2, Method::kZ}) {
      const MethodChoice choice = make_method_choice(inst, m, options.grids);
      const EsomModel esom = build_esom(inst, choice);
      const MipSolution sol = solve_model(esom.model, options.solve);
      RunReport rep = make_run_report(inst, esom, sol);
      (m == Method::kInc ? bc.inc : m == Method::kSos2 ? bc.sos2 : bc.z) = std::move(rep);
    }
    const double base = std::min(bc.inc.wall_time, bc.sos2.wall_time);
    bc.speedup = base / std::max(bc.z.wall_time, 1e-9);
    bc.z.speedup = bc.speedup;
    out.push_back(std::move(bc));
  }
  return out;
}

std::string format_benchmark(const std::vector<BenchmarkCase>& cases) {
  std::ostringstream o;
  o << "instance,method,status,objective,nodes,gap,wall_time_s,speedup\n";
  double log_sum = 0.0;
  for (const auto& c : cases) {
    for (const RunReport* r : {&c.inc, &c.sos2, &c.z}) {
      o << c.instance << ',' << r->method << ',' << ToString(r->status) << ','
        << (r->has_solution ? Num(r->objective) : "") << ',' << r->nodes << ',' << (r->has_solution ? Num(r->gap) : "")
        << ',' << fmt::format("{:.4f}", r->wall_time) << ',' << (r == &c.z ? fmt::format("{:.3f}", c.speedup) : "")
        << '\n';
    }
    log_sum += std::log(std::max(c.speedup, 1e-12));
  }
  if (!cases.empty()) {
    o << "# mean speed-up of z over the faster of inc/sos2 (geometric): "
      << fmt::format("{:.3f}", std::exp(log_sum / static_cast<double>(cases.size()))) << '\n';
  }
  return o.str();
}

}  // namespace gasmip
