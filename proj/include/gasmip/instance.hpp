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

// Integrated power and gas system description plus hourly time series.
//
// Units: gas volumes in kSm3 (flows kSm3/h), pressures in barg, power in MW,
// costs in $. The file format is described in docs/formats.md.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gasmip/rational.hpp"

namespace gasmip {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GasNode {
  std::string id;
  Rational p_min, p_max;
};

struct Pipeline {
  std::string id;
  std::string from, to;
  Rational length;        // km, informational
  Rational resistance;    // R^G
  Rational capacity;      // F-bar
  Rational linepack;      // LP factor per barg
  Rational linepack_init; // LP^ini
  Rational efficiency = 1;
};

struct Compressor {
  std::string id;
  std::string from, to;
  Rational ratio;        // Lambda
  Rational capacity;     // F-bar^C
  Rational consumption;  // CS^G, fraction of the compressed flow
};

struct GasSource {
  std::string id;
  std::string node;
  Rational cost;
  Rational capacity;
};

enum class GeneratorType { kThermal, kRenewable };

struct Generator {
  std::string id;
  GeneratorType type = GeneratorType::kThermal;
  std::string bus;   // empty when the instance has no power network
  std::string node;  // gas node, thermal units only
  Rational p_max, p_min;
  Rational ramp_up, ramp_down;
  Rational cost_om;
  Rational consumption;  // CS^V, thermal units only
  bool initial_on = false;
  Rational initial_above_min = 0;  // p-hat before the first hour
};

struct Bus {
  std::string id;
};

struct Line {
  std::string id;
  std::string from, to;
  Rational susceptance;
  Rational limit;
};

struct Instance {
  std::string name = "instance";
  int horizon = 1;
  Rational heating_value = 11;  // MWh per kSm3
  Rational cost_electricity_ns = 10000;
  Rational cost_gas_ns = 10000;
  std::string slack_bus;

  std::vector<GasNode> nodes;
  std::vector<Pipeline> pipelines;
  std::vector<Compressor> compressors;
  std::vector<GasSource> sources;
  std::vector<Generator> generators;
  std::vector<Bus> buses;
  std::vector<Line> lines;

  // Series indexed [k][entity position]; positions follow the entity vectors.
  std::vector<std::vector<Rational>> demand_electric;  // per bus
  std::vector<std::vector<Rational>> demand_gas;       // per gas node
  std::vector<std::vector<Rational>> capacity_factor;  // per generator, 1 for thermal

  int node_index(const std::string& id) const;  // -1 if absent
  int bus_index(const std::string& id) const;
};

// Parses the sectioned text format. Throws InstanceError with a line number
// on syntax errors and on invariant violations.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string write_instance(const Instance& instance);

// Throws InstanceError on the first violated invariant.
void validate_instance(const Instance& instance);

// Keeps hours 1..horizon (horizon <= instance.horizon).
Instance truncate_horizon(const Instance& instance, int horizon);

// Largest |p_m - p_n| the node bounds admit for a pipeline.
Rational pressure_range(const Instance& instance, const Pipeline& pipeline);

// Nodes with demand but no source, pipeline or compressor attached.
std::vector<std::string> isolated_demand_nodes(const Instance& instance);

struct SyntheticSpec {
  int n_nodes = 3;      // 2..4
  int n_pipelines = 2;  // 1..3, a path plus optional chords
  int horizon = 3;
  bool with_power = true;
  unsigned seed = 1;
};

// Small random instance with one source, one or two gas-fired units and
// pipelines shaped like the reference case. Used by tests and benchmarks.
Instance synthetic_instance(const SyntheticSpec& spec);

}  // namespace gasmip
