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

// Python bindings. Exact quantities cross the boundary as decimal or
// fraction strings; reports come back as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gasmip/analysis.hpp"
#include "gasmip/esom.hpp"
#include "gasmip/grid.hpp"
#include "gasmip/instance.hpp"
#include "gasmip/mip.hpp"
#include "gasmip/preprocess.hpp"

namespace py = pybind11;

namespace gasmip {
namespace {

std::vector<Integer> ToIntegers(const std::vector<long>& v) { return {v.begin(), v.end()}; }

std::vector<long> ToLongs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const Integer& x : v) out.push_back(x.get_si());
  return out;
}

PiecewiseGrid MakeGrid(const std::vector<long>& F, const std::vector<long>& P) {
  PiecewiseGrid g{ToIntegers(F), ToIntegers(P)};
  validate_grid(g);
  return g;
}

py::dict StatsDict(const ModelStats& s) {
  py::dict d;
  d["constraints"] = s.n_constraints;
  d["continuous"] = s.n_continuous;
  d["binary"] = s.n_binary;
  d["sos2_groups"] = s.n_sos2_groups;
  d["nonzeros"] = s.n_nonzeros;
  return d;
}

PipelineCase CaseFrom(const std::string& resistance, const std::string& capacity, const std::string& p_min,
                      const std::string& p_max) {
  PipelineCase pc;
  pc.resistance = ParseRational(resistance);
  pc.capacity = ParseRational(capacity);
  pc.p_min = ParseRational(p_min);
  pc.p_max = ParseRational(p_max);
  return pc;
}

py::dict InstanceSummary(const Instance& inst) {
  py::dict d;
  d["name"] = inst.name;
  d["horizon"] = inst.horizon;
  std::vector<std::string> nodes, pipelines, generators;
  for (const auto& n : inst.nodes) nodes.push_back(n.id);
  for (const auto& p : inst.pipelines) pipelines.push_back(p.id);
  for (const auto& g : inst.generators) generators.push_back(g.id);
  d["nodes"] = nodes;
  d["pipelines"] = pipelines;
  d["generators"] = generators;
  return d;
}

py::dict Solve(const std::string& text, const std::string& method, int segments, int flow_segments,
               int pressure_segments, double gap, double time_limit) {
  const Instance inst = parse_instance(text);
  GridOptions grids;
  grids.z_segments = segments;
  grids.flow_segments = flow_segments;
  grids.pressure_segments = pressure_segments;
  MipSolution sol;
  EsomModel esom;
  {
    py::gil_scoped_release release;
    esom = build_esom(inst, make_method_choice(inst, ParseMethod(method), grids));
    SolveSettings settings;
    settings.mip.rel_gap = gap;
    settings.mip.time_limit = time_limit;
    sol = solve_model(esom.model, settings);
  }
  const RunReport r = make_run_report(inst, esom, sol);
  py::dict d;
  d["instance"] = r.instance;
  d["method"] = r.method;
  d["status"] = std::string(ToString(r.status));
  d["has_solution"] = r.has_solution;
  d["objective"] = r.objective;
  d["best_bound"] = r.best_bound;
  d["gap"] = r.gap;
  d["nodes"] = r.nodes;
  d["wall_time"] = r.wall_time;
  d["balance_residual"] = r.balance_residual;
  d["gas_not_supplied"] = r.gas_not_supplied;
  d["power_not_supplied"] = r.power_not_supplied;
  d["gas_production"] = r.gas_production;
  d["generation"] = r.generation;
  d["warnings"] = esom.warnings;
  d["solution_csv"] = r.has_solution ? solution_csv(inst, esom, sol.x) : std::string();
  return d;
}

}  // namespace
}  // namespace gasmip

PYBIND11_MODULE(_gasmip, m) {
  using namespace gasmip;
  m.doc() = "Gas network MILP linearizations and dispatch models";

  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<GridError>(m, "GridError", PyExc_ValueError);

  m.def(
      "generate_grid",
      [](const std::string& resistance, long pressure_range, int segments, const std::string& reference_sum) {
        GridRequest req;
        req.resistance = ParseRational(resistance);
        req.pressure_range = pressure_range;
        req.n_segments = segments;
        req.reference_pressure_sum = ParseRational(reference_sum);
        const PiecewiseGrid g = generate_grid(req);
        return py::make_tuple(ToLongs(g.F), ToLongs(g.P));
      },
      py::arg("resistance"), py::arg("pressure_range"), py::arg("segments"), py::arg("reference_sum"),
      "Integer flow/pressure-difference grid (F, P) for one pipeline.");

  m.def(
      "interpolate_flow",
      [](const std::vector<long>& F, const std::vector<long>& P, const std::string& dp) {
        return ToFractionString(interpolate_flow(MakeGrid(F, P), ParseRational(dp)));
      },
      py::arg("F"), py::arg("P"), py::arg("dp"), "Exact flow on the grid interpolant, as a fraction string.");

  m.def(
      "compute_z_tables",
      [](const std::vector<long>& F, const std::vector<long>& P) {
        const PiecewiseGrid g = MakeGrid(F, P);
        ZParams params;
        {
          py::gil_scoped_release release;
          params = compute_z_tables(g);
        }
        return zparams_to_json(params);
      },
      py::arg("F"), py::arg("P"), "Cut-tuple tables for a grid as a JSON document.");

  m.def(
      "abc_entry",
      [](const std::vector<long>& F, const std::vector<long>& P, const std::string& table, size_t i, size_t j) {
        if (table != "A" && table != "B" && table != "C") throw py::value_error("table must be A, B or C");
        const AbcTables t = compute_abc(MakeGrid(F, P));
        const IntTable& tab = table == "A" ? t.A : table == "B" ? t.B : t.C;
        if (i >= tab.n || j >= tab.n || !tab.has(i, j)) throw py::index_error("entry outside the table domain");
        return tab.at(i, j).get_si();
      },
      py::arg("F"), py::arg("P"), py::arg("table"), py::arg("i"), py::arg("j"),
      "One entry of the A/B/C tables (zero-based indices).");

  m.def(
      "single_pipeline_stats",
      [](int z_segments, int flow_segments, int pressure_segments) {
        py::dict out;
        for (const StatsRow& r : single_pipeline_stats(PipelineCase{}, z_segments, flow_segments, pressure_segments)) {
          out[py::str(r.method)] = StatsDict(r.stats);
        }
        return out;
      },
      py::arg("z_segments") = 5, py::arg("flow_segments") = 10, py::arg("pressure_segments") = 5,
      "Model sizes of the single-pipeline models on the reference pipeline.");

  m.def(
      "tightness",
      [](const std::string& method, int segments, const std::string& resistance, const std::string& capacity,
         const std::string& p_min, const std::string& p_max) {
        TightnessReport r;
        const PipelineCase pc = CaseFrom(resistance, capacity, p_min, p_max);
        {
          py::gil_scoped_release release;
          r = tightness_report(pc, ParseMethod(method), segments);
        }
        py::dict d;
        d["computed"] = r.computed;
        d["message"] = r.message;
        d["vertices"] = r.n_vertices;
        d["fractional"] = r.n_fractional;
        d["pct_fractional"] = r.pct_fractional;
        d["avg_fractional"] = r.avg_fractional;
        d["seconds"] = r.seconds;
        return d;
      },
      py::arg("method"), py::arg("segments"), py::arg("resistance") = "379.82", py::arg("capacity") = "1026.65",
      py::arg("p_min") = "43", py::arg("p_max") = "68", "Vertex statistics of a relaxed single-pipeline polytope.");

  m.def(
      "quality_curve",
      [](int z_segments, int pwl_segments, int samples) {
        py::list out;
        for (const QualityRow& r : quality_curve(PipelineCase{}, z_segments, pwl_segments, samples)) {
          py::dict d;
          d["dp"] = r.dp;
          d["p_sum"] = r.p_sum;
          d["feasible"] = r.feasible;
          d["exact_flow"] = r.exact_flow;
          d["z_flow"] = r.z_flow;
          d["pwl_flow"] = r.pwl_flow ? py::object(py::float_(*r.pwl_flow)) : py::object(py::none());
          out.append(d);
        }
        return out;
      },
      py::arg("z_segments") = 5, py::arg("pwl_segments") = 5, py::arg("samples") = 25,
      "Exact versus linearized flow samples on the reference pipeline.");

  m.def(
      "parse_instance", [](const std::string& text) { return InstanceSummary(parse_instance(text)); },
      py::arg("text"), "Parses instance text and returns a summary; raises InstanceError.");
  m.def(
      "load_instance", [](const std::string& path) { return write_instance(load_instance(path)); },
      py::arg("path"), "Reads an instance file and returns its canonical text.");
  m.def(
      "benchmark_instance", [](int index, unsigned seed, int horizon) { return write_instance(benchmark_instance(index, seed, horizon)); },
      py::arg("index"), py::arg("seed") = 1, py::arg("horizon") = 3, "Synthetic benchmark instance as text.");

  m.def("solve", &Solve, py::arg("text"), py::arg("method") = "z", py::arg("segments") = 5,
        py::arg("flow_segments") = 10, py::arg("pressure_segments") = 5, py::arg("gap") = 1e-6,
        py::arg("time_limit") = 3600.0, "Builds and solves the dispatch model for instance text.");
}
