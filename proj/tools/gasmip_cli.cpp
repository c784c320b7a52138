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

// gasmip command line front end.
//
// Exit codes: 0 ok, 2 infeasible, 3 limits hit, 4 configuration error,
// 1 anything else.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "gasmip/analysis.hpp"
#include "gasmip/esom.hpp"
#include "gasmip/external_solver.hpp"
#include "gasmip/instance.hpp"
#include "gasmip/mps.hpp"
#include "gasmip/preprocess.hpp"

namespace {

using namespace gasmip;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;
constexpr int kExitConfig = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) throw ConfigError("cannot write " + path);
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

struct Common {
  std::string instance;
  std::string method = "z";
  int segments = 5;
  int flow_segments = 0;  // 0: twice the pressure segments
  int horizon = 0;        // 0: instance horizon
  double gap = 1e-3;
  double time_limit = 3600.0;
  int64_t node_limit = 1'000'000;
  std::string solver = "internal";
  std::string cache;
  bool deterministic = false;
  unsigned threads = 1;
};

Instance LoadWithHorizon(const Common& c) {
  if (c.instance.empty()) throw ConfigError("--instance is required");
  Instance inst = load_instance(c.instance);
  if (c.horizon > 0) inst = truncate_horizon(inst, c.horizon);
  return inst;
}

GridOptions Grids(const Common& c) {
  GridOptions g;
  g.z_segments = c.segments;
  g.pressure_segments = c.segments;
  g.flow_segments = c.flow_segments > 0 ? c.flow_segments : 2 * c.segments;
  g.threads = c.deterministic ? 1 : c.threads;
  return g;
}

SolveSettings Settings(const Common& c) {
  SolveSettings s;
  if (c.solver == "internal") {
    s.solver = SolverKind::kInternal;
  } else if (c.solver == "external") {
    s.solver = SolverKind::kExternal;
  } else {
    throw ConfigError("--solver must be internal or external");
  }
  if (!(c.gap >= 0)) throw ConfigError("--gap must be >= 0");
  s.mip.rel_gap = c.gap;
  s.mip.time_limit = c.time_limit;
  s.mip.node_limit = c.node_limit;
  return s;
}

void AddMethodFlags(CLI::App* app, Common& c) {
  app->add_option("--method", c.method, "Linearization: inc, sos2 or z")->check(CLI::IsMember({"inc", "sos2", "z"}));
  app->add_option("--segments", c.segments, "Z segments; also pressure segments per node for inc/sos2")->check(CLI::Range(2, 64));
  app->add_option("--flow-segments", c.flow_segments, "Flow segments for inc/sos2 (even; default 2*segments)");
}

void AddSolveFlags(CLI::App* app, Common& c) {
  app->add_option("--gap", c.gap, "Relative MIP gap");
  app->add_option("--time-limit", c.time_limit, "Time limit in seconds");
  app->add_option("--node-limit", c.node_limit, "Node limit (internal solver)");
  app->add_option("--solver", c.solver, "internal or external (command from $GASMIP_EXTERNAL_SOLVER)");
  app->add_flag("--deterministic", c.deterministic, "Single thread, no timing in reports");
}

int ExitFor(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return kExitOk;
    case MipStatus::kInfeasible:
      return kExitInfeasible;
    case MipStatus::kLimit:
      return kExitLimit;
    case MipStatus::kUnbounded:
    case MipStatus::kError:
      return 1;
  }
  return 1;
}

MethodChoice Choice(const Instance& inst, const Common& c, bool verbose) {
  std::optional<ZParamsCache> cache;
  if (!c.cache.empty()) cache.emplace(c.cache);
  std::vector<PrecomputeLog> log;
  std::vector<std::string> warnings;
  MethodChoice choice =
      make_method_choice(inst, ParseMethod(c.method), Grids(c), cache ? &*cache : nullptr, &log, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (verbose) {
    for (const auto& e : log) {
      std::cout << fmt::format("pipeline {}: {} tuples, {}", e.pipeline, e.tuples,
                               e.cache_hit ? std::string("cache hit")
                                           : (c.deterministic ? std::string("computed")
                                                              : fmt::format("computed in {:.3f} s", e.seconds)))
                << '\n';
    }
  }
  return choice;
}

int CmdPrecompute(const Common& c, const std::string& out) {
  Common cc = c;
  cc.method = "z";
  cc.cache = out;
  if (out.empty()) throw ConfigError("--out is required");
  const Instance inst = LoadWithHorizon(cc);
  Choice(inst, cc, true);
  return kExitOk;
}

int CmdSolve(const Common& c, const std::string& csv, const std::string& report_path) {
  const Instance inst = LoadWithHorizon(c);
  const MethodChoice choice = Choice(inst, c, false);
  const EsomModel esom = build_esom(inst, choice);
  for (const auto& w : esom.warnings) std::cerr << "warning: " << w << '\n';
  const MipSolution sol = solve_model(esom.model, Settings(c));
  RunReport rep = make_run_report(inst, esom, sol);
  if (sol.status == MipStatus::kInfeasible) rep.diagnostic = infeasibility_diagnostic(esom);
  Emit(report_path, format_run_report(rep, !c.deterministic));
  if (!csv.empty() && sol.has_incumbent) WriteFile(csv, solution_csv(inst, esom, sol.x));
  return ExitFor(sol.status);
}

int CmdTightness(const Common& c, const std::string& pipeline, size_t budget) {
  PipelineCase pc;
  if (!c.instance.empty()) pc = pipeline_case(load_instance(c.instance), pipeline);
  std::vector<Method> methods;
  if (c.method == "all") {
    methods = {Method::kInc, Method::kSos2, Method::kZ};
  } else {
    methods = {ParseMethod(c.method)};
  }
  std::vector<TightnessReport> reps;
  EnumerationOptions opt;
  opt.ray_budget = budget;
  for (Method m : methods) reps.push_back(tightness_report(pc, m, c.segments, opt));
  std::cout << format_tightness(reps, !c.deterministic);
  return kExitOk;
}

int CmdQuality(const Common& c, const std::string& pipeline, int samples, const std::string& out) {
  PipelineCase pc;
  if (!c.instance.empty()) pc = pipeline_case(load_instance(c.instance), pipeline);
  const int pwl = c.flow_segments > 0 ? c.flow_segments / 2 : c.segments;
  Emit(out, quality_csv(quality_curve(pc, c.segments, pwl, samples)));
  return kExitOk;
}

std::string StatsLine(const std::string& label, const ModelStats& s) {
  auto nz = [](int64_t v) { return v < 0 ? std::string("-") : std::to_string(v); };
  return fmt::format("{:<14} {:>12} {:>12} {:>10} {:>6} {:>10}\n", label, s.n_constraints, s.n_continuous, s.n_binary,
                     s.n_sos2_groups, nz(s.n_nonzeros));
}

int CmdStats(const Common& c, bool by_tag) {
  std::cout << fmt::format("{:<14} {:>12} {:>12} {:>10} {:>6} {:>10}\n", "case", "constraints", "continuous", "binary",
                           "sos2", "nonzeros");
  if (c.instance.empty()) {
    const int flow = c.flow_segments > 0 ? c.flow_segments : 2 * c.segments;
    for (const StatsRow& r : single_pipeline_stats(PipelineCase{}, c.segments, flow, c.segments)) {
      std::cout << StatsLine(r.method + "/1P", r.stats);
      if (r.formula) std::cout << StatsLine(r.method + "/formula", *r.formula);
      if (by_tag) {
        for (const auto& [tag, n] : r.by_tag) std::cout << fmt::format("  {:<18} {}\n", tag, n);
      }
    }
    return kExitOk;
  }
  const Instance inst = LoadWithHorizon(c);
  for (const std::string m : {"inc", "sos2", "z"}) {
    Common cc = c;
    cc.method = m;
    const EsomModel esom = build_esom(inst, Choice(inst, cc, false));
    std::cout << StatsLine(m + "/" + inst.name, model_stats(esom.model));
    if (by_tag) {
      for (const auto& [tag, n] : constraint_counts_by_tag(esom.model)) std::cout << fmt::format("  {:<18} {}\n", tag, n);
    }
  }
  return kExitOk;
}

int CmdExportMps(const Common& c, const std::string& out) {
  const Instance inst = LoadWithHorizon(c);
  const EsomModel esom = build_esom(inst, Choice(inst, c, false));
  Emit(out, export_mps(esom.model).text);
  return kExitOk;
}

int CmdBenchmark(const Common& c, BenchmarkOptions opt, const std::string& out) {
  opt.solve = Settings(c);
  Emit(out, format_benchmark(run_benchmark(opt)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gasmip: gas network MILP linearizations, tightness analysis and solvers"};
  app.require_subcommand(1);
  Common c;

  std::string out;
  auto* pre = app.add_subcommand("precompute", "Compute and cache Z parameter tables for every pipeline");
  pre->add_option("--instance", c.instance, "Instance file")->required();
  pre->add_option("--segments", c.segments, "Z segments")->check(CLI::Range(2, 64));
  pre->add_option("--out", out, "Cache file")->required();
  pre->add_option("--threads", c.threads, "Worker threads");
  pre->add_flag("--deterministic", c.deterministic, "Single thread, no timing output");

  std::string csv, report;
  auto* solve = app.add_subcommand("solve", "Build and solve the dispatch model");
  solve->add_option("--instance", c.instance, "Instance file")->required();
  solve->add_option("--horizon", c.horizon, "Hours to keep (default: all)");
  solve->add_option("--cache", c.cache, "Z parameter cache file");
  solve->add_option("--csv", csv, "Write the solution table here");
  solve->add_option("--report", report, "Write the report here (default stdout)");
  AddMethodFlags(solve, c);
  AddSolveFlags(solve, c);

  std::string pipeline = "l1";
  size_t budget = 2'000'000;
  auto* tight = app.add_subcommand("tightness", "Vertex statistics of a relaxed single-pipeline polytope");
  tight->add_option("--instance", c.instance, "Instance file (default: 43-68 barg, R=379.82)");
  tight->add_option("--pipeline", pipeline, "Pipeline id in the instance");
  tight->add_option("--method", c.method, "inc, sos2, z or all")->check(CLI::IsMember({"inc", "sos2", "z", "all"}));
  tight->add_option("--segments", c.segments, "Z segments / pressure segments")->check(CLI::Range(2, 16));
  tight->add_option("--ray-budget", budget, "Abort enumeration beyond this many rays");
  tight->add_flag("--deterministic", c.deterministic, "No timing column values");

  int samples = 50;
  auto* qual = app.add_subcommand("quality", "CSV of exact versus linearized flow");
  qual->add_option("--instance", c.instance, "Instance file (default: 43-68 barg, R=379.82)");
  qual->add_option("--pipeline", pipeline, "Pipeline id in the instance");
  qual->add_option("--segments", c.segments, "Z segments")->check(CLI::Range(2, 64));
  qual->add_option("--flow-segments", c.flow_segments, "inc/sos2 flow segments (pressure segments = half)");
  qual->add_option("--samples", samples, "Samples per pressure sum")->check(CLI::Range(1, 100000));
  qual->add_option("--out", out, "Output CSV (default stdout)");

  BenchmarkOptions bopt;
  auto* bench = app.add_subcommand("benchmark", "Solve synthetic instances with inc, sos2 and z");
  bench->add_option("--instances", bopt.n_instances, "Number of instances")->capture_default_str()->check(CLI::Range(1, 1000));
  bench->add_option("--seed", bopt.seed, "Random seed")->capture_default_str();
  bench->add_option("--horizon", bopt.horizon, "Hours per instance")->capture_default_str()->check(CLI::Range(1, 48));
  bench->add_option("--segments", bopt.grids.z_segments, "Z segments")->capture_default_str()->check(CLI::Range(2, 64));
  bench->add_option("--pressure-segments", bopt.grids.pressure_segments, "inc/sos2 pressure segments")->capture_default_str()->check(CLI::Range(1, 64));
  bench->add_option("--flow-segments", bopt.grids.flow_segments, "inc/sos2 flow segments")->capture_default_str()->check(CLI::Range(2, 128));
  bench->add_option("--out", out, "Output CSV (default stdout)");
  AddSolveFlags(bench, c);

  bool by_tag = false;
  auto* stats = app.add_subcommand("stats", "Problem sizes per method");
  stats->add_option("--instance", c.instance, "Instance file (default: single pipeline)");
  stats->add_option("--horizon", c.horizon, "Hours to keep");
  stats->add_option("--segments", c.segments, "Z segments / pressure segments")->check(CLI::Range(2, 64));
  stats->add_option("--flow-segments", c.flow_segments, "inc/sos2 flow segments");
  stats->add_flag("--by-tag", by_tag, "Also print constraint counts per tag");

  auto* mps = app.add_subcommand("export-mps", "Write the dispatch model as MPS");
  mps->add_option("--instance", c.instance, "Instance file")->required();
  mps->add_option("--horizon", c.horizon, "Hours to keep");
  mps->add_option("--cache", c.cache, "Z parameter cache file");
  mps->add_option("--out", out, "Output file (default stdout)");
  AddMethodFlags(mps, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*pre) return CmdPrecompute(c, out);
    if (*solve) return CmdSolve(c, csv, report);
    if (*tight) return CmdTightness(c, pipeline, budget);
    if (*qual) return CmdQuality(c, pipeline, samples, out);
    if (*bench) return CmdBenchmark(c, bopt, out);
    if (*stats) return CmdStats(c, by_tag);
    if (*mps) return CmdExportMps(c, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ExternalSolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
