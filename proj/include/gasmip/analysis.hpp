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

// Reports built on top of the model builders and solvers: polyhedral
// tightness, linearization quality curves, problem sizes, solve reports and
// the method benchmark.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gasmip/esom.hpp"
#include "gasmip/instance.hpp"
#include "gasmip/mip.hpp"
#include "gasmip/polytope.hpp"

namespace gasmip {

// One pipeline between two gas nodes, enough to build single-pipeline models.
struct PipelineCase {
  std::string id = "l1";
  Rational resistance = ParseRational("379.82");
  Rational capacity = ParseRational("1026.65");
  Rational p_min = 43;
  Rational p_max = 68;
  std::optional<Rational> reference_pressure_sum;  // default p_min + p_max
};

PipelineCase pipeline_case(const Instance& instance, const std::string& pipeline_id);

// Single-pipeline models with the segment conventions of the tightness
// study: Z uses `segments`; INC/SOS2 use `segments` per node pressure grid
// and 2 * segments for the flow grid.
MipModel single_pipeline_model(const PipelineCase& pc, Method method, int segments, bool integers_as_continuous,
                               std::vector<VarId>* marked = nullptr);

struct TightnessReport {
  Method method = Method::kZ;
  int segments = 0;
  bool computed = false;
  std::string message;  // reason when not computed
  size_t n_vertices = 0;
  size_t n_fractional = 0;
  double pct_fractional = 0.0;
  double avg_fractional = 0.0;
  size_t reduced_dim = 0;
  size_t max_rays = 0;
  double seconds = 0.0;
};

// Enumerates the vertices of the relaxed single-pipeline polytope. Z marks
// delta and xi (declared continuous); INC marks its binaries; SOS2 counts a
// vertex as fractional when some SOS2 group is violated, with the number of
// violated groups as its fractional count. A blown ray budget yields
// computed = false ("cannot be computed").
TightnessReport tightness_report(const PipelineCase& pc, Method method, int segments,
                                 const EnumerationOptions& options = {});

// Timing columns are left out when include_timing is false (byte-stable output).
std::string format_tightness(const std::vector<TightnessReport>& reports, bool include_timing = true);

struct QualityRow {
  double dp = 0.0;
  double p_sum = 0.0;
  bool feasible = false;  // both pressures within the node bounds
  double exact_flow = 0.0;
  double z_flow = 0.0;
  std::optional<double> pwl_flow;  // INC/SOS2 (identical curves), feasible rows only
};

// Samples dp = range * i / samples for i = 0..samples at five pressure sums
// evenly spaced from 2 p_min to 2 p_max. Exact flow is sqrt(R dp p_sum).
std::vector<QualityRow> quality_curve(const PipelineCase& pc, int z_segments, int pwl_segments, int samples);
std::string quality_csv(const std::vector<QualityRow>& rows);

struct StatsRow {
  std::string method;
  ModelStats stats;
  std::map<std::string, int64_t> by_tag;
  std::optional<ModelStats> formula;  // closed-form counts where they apply
};

// Single pipeline (two nodes) with the given segment counts.
std::vector<StatsRow> single_pipeline_stats(const PipelineCase& pc, int z_segments, int flow_segments,
                                            int pressure_segments);

// Closed-form size formulas for L pipelines and M nodes over one period.
ModelStats inc_formula(int64_t L, int64_t M, int64_t F, int64_t P);
ModelStats sos2_formula(int64_t L, int64_t M, int64_t F, int64_t P);
ModelStats z_formula(int64_t L, int64_t M, int64_t Z);

enum class SolverKind { kInternal, kExternal };

struct SolveSettings {
  SolverKind solver = SolverKind::kInternal;
  MipOptions mip;
  std::string external_command;  // template, see external_solver.hpp
};

struct RunReport {
  std::string instance;
  std::string method;
  MipStatus status = MipStatus::kError;
  bool has_solution = false;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  int64_t nodes = 0;
  double wall_time = 0.0;
  std::optional<double> speedup;  // baseline time / this time
  double total_linepack = 0.0;
  std::vector<std::pair<std::string, double>> gas_production;  // per source, summed over k
  std::vector<std::pair<std::string, double>> generation;       // per generator
  double gas_not_supplied = 0.0;
  double power_not_supplied = 0.0;
  double balance_residual = 0.0;
  std::string diagnostic;
  std::string message;
};

MipSolution solve_model(const MipModel& model, const SolveSettings& settings);

RunReport make_run_report(const Instance& instance, const EsomModel& esom, const MipSolution& solution);

// Long-format solution table: k,kind,entity,value.
std::string solution_csv(const Instance& instance, const EsomModel& esom, const std::vector<double>& x);

std::string format_run_report(const RunReport& report, bool include_timing = true);

// For infeasible models: solves an elastic LP with slacks on every balance
// row and names the first balance that needs one.
std::string infeasibility_diagnostic(const EsomModel& esom);

struct BenchmarkCase {
  std::string instance;
  RunReport inc, sos2, z;
  double speedup = 0.0;  // min(inc, sos2 time) / z time
};

// Grid defaults are sized so the internal solver proves optimality on the
// default instances in about a minute.
struct BenchmarkOptions {
  int n_instances = 5;
  unsigned seed = 1;
  int horizon = 3;
  GridOptions grids{.z_segments = 5, .flow_segments = 6, .pressure_segments = 3};
  SolveSettings solve;
};

std::vector<BenchmarkCase> run_benchmark(const BenchmarkOptions& options);
std::string format_benchmark(const std::vector<BenchmarkCase>& cases);

// Synthetic instance family used by the benchmark and the equivalence checks.
Instance benchmark_instance(int index, unsigned seed, int horizon);

}  // namespace gasmip
