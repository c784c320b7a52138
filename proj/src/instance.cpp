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

#include "gasmip/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace gasmip {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Table {
  std::string section;
  int header_line = 0;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;
};

class RowView {
 public:
  RowView(const Table& t, size_t r) : t_(t), r_(r) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw InstanceError("line " + std::to_string(t_.row_lines[r_]) + " [" + t_.section + "]: " + msg);
  }
  std::optional<std::string> text(const std::string& col) const {
    const auto it = std::find(t_.header.begin(), t_.header.end(), col);
    if (it == t_.header.end()) return std::nullopt;
    const std::string& v = t_.rows[r_][static_cast<size_t>(it - t_.header.begin())];
    if (v.empty()) return std::nullopt;
    return v;
  }
  std::string str(const std::string& col) const {
    auto v = text(col);
    if (!v) fail("missing value for '" + col + "'");
    return *v;
  }
  Rational num(const std::string& col) const {
    const std::string v = str(col);
    try {
      return ParseRational(v);
    } catch (const std::invalid_argument&) {
      fail("'" + col + "' is not a number: " + v);
    }
  }
  Rational num_or(const std::string& col, const Rational& fallback) const {
    return text(col) ? num(col) : fallback;
  }

 private:
  const Table& t_;
  size_t r_;
};

const std::set<std::string> kTableSections = {
    "nodes", "pipelines", "compressors", "sources", "generators", "buses", "lines",
    "demand_electric", "demand_gas", "capacity_factors"};

template <typename T>
int IndexOf(const std::vector<T>& v, const std::string& id) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

// Fills series[k][pos] from a "k, id1, id2, ..." table.
template <typename T>
std::vector<std::vector<Rational>> ReadSeries(const Table* t, const std::vector<T>& entities,
                                              int horizon, const Rational& fallback) {
  std::vector<std::vector<Rational>> out(static_cast<size_t>(horizon),
                                         std::vector<Rational>(entities.size(), fallback));
  if (t == nullptr) return out;
  if (t->header.empty() || t->header[0] != "k") {
    throw InstanceError("line " + std::to_string(t->header_line) + " [" + t->section +
                        "]: first column must be 'k'");
  }
  std::vector<int> pos;
  for (size_t c = 1; c < t->header.size(); ++c) {
    const int p = IndexOf(entities, t->header[c]);
    if (p < 0) {
      throw InstanceError("line " + std::to_string(t->header_line) + " [" + t->section +
                          "]: unknown id '" + t->header[c] + "'");
    }
    pos.push_back(p);
  }
  std::vector<bool> seen(static_cast<size_t>(horizon), false);
  for (size_t r = 0; r < t->rows.size(); ++r) {
    RowView row(*t, r);
    const Rational kq = row.num("k");
    if (!IsInteger(kq) || kq < 1 || kq > horizon) row.fail("k outside 1..horizon");
    const size_t k = static_cast<size_t>(kq.get_num().get_si() - 1);
    if (seen[k]) row.fail("duplicate k");
    seen[k] = true;
    for (size_t c = 1; c < t->header.size(); ++c) {
      out[k][static_cast<size_t>(pos[c - 1])] = row.num(t->header[c]);
    }
  }
  for (int k = 0; k < horizon; ++k) {
    if (!seen[static_cast<size_t>(k)]) {
      throw InstanceError("[" + t->section + "]: no row for k=" + std::to_string(k + 1));
    }
  }
  return out;
}

void Require(bool ok, const std::string& msg) {
  if (!ok) throw InstanceError(msg);
}

}  // namespace

int Instance::node_index(const std::string& id) const { return IndexOf(nodes, id); }
int Instance::bus_index(const std::string& id) const { return IndexOf(buses, id); }

Instance parse_instance(const std::string& text) {
  std::map<std::string, std::string> system;
  std::map<std::string, Table> tables;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InstanceError("line " + std::to_string(line_no) + ": bad section header");
      section = Trim(line.substr(1, line.size() - 2));
      if (section != "system" && !kTableSections.count(section)) {
        throw InstanceError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      if (section != "system") {
        if (tables.count(section)) {
          throw InstanceError("line " + std::to_string(line_no) + ": duplicate section [" + section + "]");
        }
        tables[section].section = section;
      }
      continue;
    }
    if (section.empty()) throw InstanceError("line " + std::to_string(line_no) + ": content before any section");
    if (section == "system") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InstanceError("line " + std::to_string(line_no) + ": expected key = value");
      system[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
      continue;
    }
    Table& t = tables[section];
    auto cells = SplitCsv(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      t.header_line = line_no;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InstanceError("line " + std::to_string(line_no) + " [" + section + "]: expected " +
                          std::to_string(t.header.size()) + " columns, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.row_lines.push_back(line_no);
  }

  Instance inst;
  auto sys_num = [&](const std::string& key, Rational& target) {
    if (auto it = system.find(key); it != system.end()) {
      try {
        target = ParseRational(it->second);
      } catch (const std::invalid_argument&) {
        throw InstanceError("[system]: '" + key + "' is not a number");
      }
    }
  };
  for (const auto& [key, value] : system) {
    static const std::set<std::string> known = {"name",        "horizon",   "heating_value", "cost_electricity_ns",
                                                "cost_gas_ns", "slack_bus"};
    if (!known.count(key)) throw InstanceError("[system]: unknown key '" + key + "'");
  }
  if (auto it = system.find("name"); it != system.end()) inst.name = it->second;
  Rational horizon = inst.horizon;
  sys_num("horizon", horizon);
  if (!IsInteger(horizon) || horizon < 1 || horizon > 100000) throw InstanceError("[system]: horizon must be a positive integer");
  inst.horizon = static_cast<int>(horizon.get_num().get_si());
  sys_num("heating_value", inst.heating_value);
  sys_num("cost_electricity_ns", inst.cost_electricity_ns);
  sys_num("cost_gas_ns", inst.cost_gas_ns);
  if (auto it = system.find("slack_bus"); it != system.end()) inst.slack_bus = it->second;

  auto table = [&](const std::string& name) -> const Table* {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
  };
  auto each = [&](const std::string& name, auto fn) {
    if (const Table* t = table(name)) {
      for (size_t r = 0; r < t->rows.size(); ++r) fn(RowView(*t, r));
    }
  };

  each("nodes", [&](const RowView& r) { inst.nodes.push_back({r.str("id"), r.num("p_min"), r.num("p_max")}); });
  each("pipelines", [&](const RowView& r) {
    Pipeline p;
    p.id = r.str("id");
    p.from = r.str("from");
    p.to = r.str("to");
    p.length = r.num_or("length", 0);
    p.resistance = r.num("resistance");
    p.capacity = r.num("capacity");
    p.linepack = r.num("linepack");
    p.efficiency = r.num_or("efficiency", 1);
    const int a = inst.node_index(p.from);
    const int b = inst.node_index(p.to);
    if (a < 0 || b < 0) r.fail("pipeline endpoint is not a known node");
    // Default LP^ini: linepack at the mean of the two node mid pressures.
    const GasNode& na = inst.nodes[static_cast<size_t>(a)];
    const GasNode& nb = inst.nodes[static_cast<size_t>(b)];
    p.linepack_init = r.num_or("linepack_init", p.linepack * (na.p_min + na.p_max + nb.p_min + nb.p_max) / 4);
    inst.pipelines.push_back(std::move(p));
  });
  each("compressors", [&](const RowView& r) {
    inst.compressors.push_back(
        {r.str("id"), r.str("from"), r.str("to"), r.num("ratio"), r.num("capacity"), r.num_or("consumption", 0)});
  });
  each("sources", [&](const RowView& r) {
    inst.sources.push_back({r.str("id"), r.str("node"), r.num("cost"), r.num("capacity")});
  });
  each("buses", [&](const RowView& r) { inst.buses.push_back({r.str("id")}); });
  each("lines", [&](const RowView& r) {
    inst.lines.push_back({r.str("id"), r.str("from"), r.str("to"), r.num("susceptance"), r.num("limit")});
  });
  each("generators", [&](const RowView& r) {
    Generator g;
    g.id = r.str("id");
    const std::string type = r.str("type");
    if (type == "thermal") {
      g.type = GeneratorType::kThermal;
    } else if (type == "renewable") {
      g.type = GeneratorType::kRenewable;
    } else {
      r.fail("type must be 'thermal' or 'renewable'");
    }
    g.bus = r.text("bus").value_or("");
    g.node = r.text("node").value_or("");
    g.p_max = r.num("p_max");
    g.p_min = r.num_or("p_min", 0);
    g.ramp_up = r.num_or("ramp_up", g.p_max);
    g.ramp_down = r.num_or("ramp_down", g.p_max);
    g.cost_om = r.num_or("cost_om", 0);
    g.consumption = r.num_or("consumption", 0);
    const Rational on = r.num_or("initial_on", 0);
    if (on != 0 && on != 1) r.fail("initial_on must be 0 or 1");
    g.initial_on = on == 1;
    g.initial_above_min = r.num_or("initial_above_min", 0);
    inst.generators.push_back(std::move(g));
  });

  inst.demand_electric = ReadSeries(table("demand_electric"), inst.buses, inst.horizon, 0);
  inst.demand_gas = ReadSeries(table("demand_gas"), inst.nodes, inst.horizon, 0);
  inst.capacity_factor = ReadSeries(table("capacity_factors"), inst.generators, inst.horizon, 1);
  if (inst.slack_bus.empty() && !inst.buses.empty()) inst.slack_bus = inst.buses.front().id;
  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Instance inst = parse_instance(ss.str());
  return inst;
}

void validate_instance(const Instance& inst) {
  auto unique = [](const auto& v, const std::string& what) {
    std::set<std::string> ids;
    for (const auto& e : v) {
      Require(!e.id.empty(), what + " with empty id");
      Require(ids.insert(e.id).second, "duplicate " + what + " id '" + e.id + "'");
    }
  };
  unique(inst.nodes, "node");
  unique(inst.pipelines, "pipeline");
  unique(inst.compressors, "compressor");
  unique(inst.sources, "source");
  unique(inst.generators, "generator");
  unique(inst.buses, "bus");
  unique(inst.lines, "line");
  Require(inst.horizon >= 1, "horizon must be >= 1");
  Require(inst.heating_value > 0, "heating_value must be positive");
  Require(inst.cost_electricity_ns >= 0 && inst.cost_gas_ns >= 0, "non-supplied costs must be >= 0");
  for (const GasNode& n : inst.nodes) {
    Require(n.p_min >= 0 && n.p_min <= n.p_max, "node " + n.id + ": need 0 <= p_min <= p_max");
  }
  auto node = [&](const std::string& id, const std::string& who) {
    Require(inst.node_index(id) >= 0, who + ": unknown gas node '" + id + "'");
  };
  auto bus = [&](const std::string& id, const std::string& who) {
    Require(inst.bus_index(id) >= 0, who + ": unknown bus '" + id + "'");
  };
  for (const Pipeline& p : inst.pipelines) {
    const std::string who = "pipeline " + p.id;
    node(p.from, who);
    node(p.to, who);
    Require(p.from != p.to, who + ": endpoints must differ");
    Require(p.resistance > 0 && p.capacity > 0, who + ": resistance and capacity must be positive");
    Require(p.linepack > 0 && p.linepack_init >= 0, who + ": linepack must be positive");
    Require(p.efficiency > 0 && p.efficiency <= 1, who + ": efficiency must be in (0,1]");
    Require(p.length >= 0, who + ": negative length");
  }
  for (const Compressor& c : inst.compressors) {
    const std::string who = "compressor " + c.id;
    node(c.from, who);
    node(c.to, who);
    Require(c.ratio >= 1, who + ": ratio must be >= 1");
    Require(c.capacity >= 0, who + ": capacity must be >= 0");
    Require(c.consumption >= 0 && c.consumption < 1, who + ": consumption must be in [0,1)");
  }
  for (const GasSource& s : inst.sources) {
    node(s.node, "source " + s.id);
    Require(s.capacity >= 0, "source " + s.id + ": capacity must be >= 0");
  }
  for (const Generator& g : inst.generators) {
    const std::string who = "generator " + g.id;
    if (!inst.buses.empty()) bus(g.bus, who);
    Require(g.p_max > 0 && g.p_min >= 0, who + ": need p_max > 0 and p_min >= 0");
    if (g.type == GeneratorType::kThermal) {
      node(g.node, who);
      Require(g.p_min < g.p_max, who + ": need p_min < p_max");
      Require(g.ramp_up > 0 && g.ramp_down > 0, who + ": ramps must be positive");
      Require(g.consumption >= 0, who + ": consumption must be >= 0");
      Require(g.initial_above_min >= 0 && g.initial_above_min <= g.p_max - g.p_min,
              who + ": initial_above_min outside [0, p_max - p_min]");
      Require(g.initial_on || g.initial_above_min == 0, who + ": initial_above_min needs initial_on");
    }
  }
  for (const Line& l : inst.lines) {
    bus(l.from, "line " + l.id);
    bus(l.to, "line " + l.id);
    Require(l.susceptance > 0 && l.limit >= 0, "line " + l.id + ": need susceptance > 0, limit >= 0");
  }
  if (!inst.buses.empty()) bus(inst.slack_bus, "slack_bus");
  auto series = [&](const std::vector<std::vector<Rational>>& s, size_t width, const std::string& what) {
    Require(s.size() == static_cast<size_t>(inst.horizon), what + ": wrong number of hours");
    for (const auto& row : s) {
      Require(row.size() == width, what + ": wrong width");
      for (const Rational& v : row) Require(v >= 0, what + ": values must be >= 0");
    }
  };
  series(inst.demand_electric, inst.buses.size(), "demand_electric");
  series(inst.demand_gas, inst.nodes.size(), "demand_gas");
  series(inst.capacity_factor, inst.generators.size(), "capacity_factors");
  for (const auto& row : inst.capacity_factor) {
    for (const Rational& v : row) Require(v <= 1, "capacity_factors: values must be <= 1");
  }
}

Instance truncate_horizon(const Instance& inst, int horizon) {
  if (horizon < 1 || horizon > inst.horizon) {
    throw InstanceError("horizon " + std::to_string(horizon) + " outside 1.." + std::to_string(inst.horizon));
  }
  Instance out = inst;
  out.horizon = horizon;
  out.demand_electric.resize(static_cast<size_t>(horizon));
  out.demand_gas.resize(static_cast<size_t>(horizon));
  out.capacity_factor.resize(static_cast<size_t>(horizon));
  return out;
}

Rational pressure_range(const Instance& inst, const Pipeline& p) {
  const GasNode& m = inst.nodes.at(static_cast<size_t>(inst.node_index(p.from)));
  const GasNode& n = inst.nodes.at(static_cast<size_t>(inst.node_index(p.to)));
  const Rational a = m.p_max - n.p_min;
  const Rational b = n.p_max - m.p_min;
  return a > b ? a : b;
}

std::vector<std::string> isolated_demand_nodes(const Instance& inst) {
  std::set<std::string> linked;
  for (const auto& p : inst.pipelines) linked.insert({p.from, p.to});
  for (const auto& c : inst.compressors) linked.insert({c.from, c.to});
  for (const auto& s : inst.sources) linked.insert(s.node);
  std::vector<std::string> out;
  for (size_t m = 0; m < inst.nodes.size(); ++m) {
    bool demand = false;
    for (const auto& row : inst.demand_gas) demand = demand || row[m] > 0;
    for (const auto& g : inst.generators) demand = demand || (g.type == GeneratorType::kThermal && g.node == inst.nodes[m].id);
    if (demand && !linked.count(inst.nodes[m].id)) out.push_back(inst.nodes[m].id);
  }
  return out;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream o;
  auto d = [](const Rational& v) { return ToDecimalString(v); };
  o << "[system]\nname = " << inst.name << "\nhorizon = " << inst.horizon << "\nheating_value = " << d(inst.heating_value)
    << "\ncost_electricity_ns = " << d(inst.cost_electricity_ns) << "\ncost_gas_ns = " << d(inst.cost_gas_ns) << '\n';
  if (!inst.slack_bus.empty()) o << "slack_bus = " << inst.slack_bus << '\n';
  o << "\n[nodes]\nid, p_min, p_max\n";
  for (const auto& n : inst.nodes) o << n.id << ", " << d(n.p_min) << ", " << d(n.p_max) << '\n';
  if (!inst.pipelines.empty()) {
    o << "\n[pipelines]\nid, from, to, length, resistance, capacity, linepack, linepack_init, efficiency\n";
    for (const auto& p : inst.pipelines) {
      o << p.id << ", " << p.from << ", " << p.to << ", " << d(p.length) << ", " << d(p.resistance) << ", "
        << d(p.capacity) << ", " << d(p.linepack) << ", " << d(p.linepack_init) << ", " << d(p.efficiency) << '\n';
    }
  }
  if (!inst.compressors.empty()) {
    o << "\n[compressors]\nid, from, to, ratio, capacity, consumption\n";
    for (const auto& c : inst.compressors) {
      o << c.id << ", " << c.from << ", " << c.to << ", " << d(c.ratio) << ", " << d(c.capacity) << ", "
        << d(c.consumption) << '\n';
    }
  }
  if (!inst.sources.empty()) {
    o << "\n[sources]\nid, node, cost, capacity\n";
    for (const auto& s : inst.sources) o << s.id << ", " << s.node << ", " << d(s.cost) << ", " << d(s.capacity) << '\n';
  }
  if (!inst.buses.empty()) {
    o << "\n[buses]\nid\n";
    for (const auto& b : inst.buses) o << b.id << '\n';
  }
  if (!inst.lines.empty()) {
    o << "\n[lines]\nid, from, to, susceptance, limit\n";
    for (const auto& l : inst.lines) {
      o << l.id << ", " << l.from << ", " << l.to << ", " << d(l.susceptance) << ", " << d(l.limit) << '\n';
    }
  }
  if (!inst.generators.empty()) {
    o << "\n[generators]\nid, type, bus, node, p_max, p_min, ramp_up, ramp_down, cost_om, consumption, initial_on, "
         "initial_above_min\n";
    for (const auto& g : inst.generators) {
      o << g.id << ", " << (g.type == GeneratorType::kThermal ? "thermal" : "renewable") << ", " << g.bus << ", "
        << g.node << ", " << d(g.p_max) << ", " << d(g.p_min) << ", " << d(g.ramp_up) << ", " << d(g.ramp_down)
        << ", " << d(g.cost_om) << ", " << d(g.consumption) << ", " << (g.initial_on ? 1 : 0) << ", "
        << d(g.initial_above_min) << '\n';
    }
  }
  auto series = [&](const char* name, const auto& entities, const std::vector<std::vector<Rational>>& s) {
    if (entities.empty()) return;
    o << "\n[" << name << "]\nk";
    for (const auto& e : entities) o << ", " << e.id;
    o << '\n';
    for (size_t k = 0; k < s.size(); ++k) {
      o << (k + 1);
      for (const Rational& v : s[k]) o << ", " << d(v);
      o << '\n';
    }
  };
  series("demand_electric", inst.buses, inst.demand_electric);
  series("demand_gas", inst.nodes, inst.demand_gas);
  series("capacity_factors", inst.generators, inst.capacity_factor);
  return o.str();
}

Instance synthetic_instance(const SyntheticSpec& spec) {
  if (spec.n_nodes < 2 || spec.n_pipelines < 1 || spec.horizon < 1) {
    throw InstanceError("synthetic instance needs >= 2 nodes, >= 1 pipeline, horizon >= 1");
  }
  const int max_pipes = spec.n_nodes * (spec.n_nodes - 1) / 2;
  if (spec.n_pipelines > max_pipes) throw InstanceError("too many pipelines for the node count");
  std::mt19937 rng(spec.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  struct PipeType {
    const char* resistance;
    const char* capacity;
    const char* linepack;
  };
  static const PipeType kTypes[] = {{"379.82", "1026.65", "42.84"},
                                    {"443.13", "1108.91", "36.72"},
                                    {"332.34", "960.34", "48.96"},
                                    {"664.69", "1358.13", "24.48"},
                                    {"265.88", "858.95", "61.2"}};

  Instance inst;
  inst.name = "synthetic_s" + std::to_string(spec.seed);
  inst.horizon = spec.horizon;
  inst.heating_value = 11;
  inst.cost_electricity_ns = 3000;
  inst.cost_gas_ns = 2000;
  for (int i = 1; i <= spec.n_nodes; ++i) inst.nodes.push_back({"n" + std::to_string(i), 43, 68});
  // A path n1 - n2 - ... then chords until the pipeline count is reached.
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < spec.n_nodes && static_cast<int>(edges.size()) < spec.n_pipelines; ++i) edges.push_back({i, i + 1});
  for (int a = 1; a <= spec.n_nodes && static_cast<int>(edges.size()) < spec.n_pipelines; ++a) {
    for (int b = a + 2; b <= spec.n_nodes && static_cast<int>(edges.size()) < spec.n_pipelines; ++b) edges.push_back({a, b});
  }
  for (size_t e = 0; e < edges.size(); ++e) {
    const PipeType& t = kTypes[pick(0, 4)];
    Pipeline p;
    p.id = "l" + std::to_string(e + 1);
    p.from = "n" + std::to_string(edges[e].first);
    p.to = "n" + std::to_string(edges[e].second);
    p.length = 70;
    p.resistance = ParseRational(t.resistance);
    p.capacity = ParseRational(t.capacity);
    p.linepack = ParseRational(t.linepack);
    p.linepack_init = p.linepack * Rational(111, 2);
    p.efficiency = 1;
    inst.pipelines.push_back(std::move(p));
  }
  // Cheap gas enters at n1; the far node has an expensive local source.
  const std::string far = "n" + std::to_string(spec.n_nodes);
  inst.sources.push_back({"s1", "n1", 330, 3000});
  inst.sources.push_back({"s2", far, 600 + pick(0, 100), 400});
  inst.demand_gas.assign(static_cast<size_t>(spec.horizon), std::vector<Rational>(inst.nodes.size(), 0));
  // Demand only where a pipeline or source can serve it.
  std::set<std::string> served{"n1", far};
  for (const Pipeline& p : inst.pipelines) served.insert({p.from, p.to});
  for (int k = 0; k < spec.horizon; ++k) {
    for (size_t m = 1; m < inst.nodes.size(); ++m) {
      const int d = 100 + 20 * pick(0, 10);
      if (served.count(inst.nodes[m].id)) inst.demand_gas[static_cast<size_t>(k)][m] = d;
    }
  }
  if (spec.with_power) {
    inst.buses = {{"b1"}, {"b2"}};
    inst.slack_bus = "b1";
    inst.lines.push_back({"e1", "b1", "b2", 10, 300});
    Generator g1;
    g1.id = "g1";
    g1.bus = "b1";
    g1.node = far;
    g1.p_max = 240;
    g1.p_min = 116;
    g1.ramp_up = g1.ramp_down = 124;
    g1.cost_om = 4;
    g1.consumption = Rational(217, 100);
    inst.generators.push_back(g1);
    Generator g2 = g1;
    g2.id = "g2";
    g2.bus = "b2";
    g2.node = "n" + std::to_string(std::max(1, spec.n_nodes - 1));
    if (!served.count(g2.node)) g2.node = "n1";
    g2.p_max = 112;
    g2.p_min = 77;
    g2.ramp_up = g2.ramp_down = 35;
    g2.consumption = Rational(257, 100);
    inst.generators.push_back(g2);
    Generator w;
    w.id = "w1";
    w.type = GeneratorType::kRenewable;
    w.bus = "b2";
    w.p_max = 150;
    w.cost_om = 2;
    inst.generators.push_back(w);
    inst.demand_electric.assign(static_cast<size_t>(spec.horizon), std::vector<Rational>(2, 0));
    inst.capacity_factor.assign(static_cast<size_t>(spec.horizon), std::vector<Rational>(3, 1));
    for (int k = 0; k < spec.horizon; ++k) {
      inst.demand_electric[static_cast<size_t>(k)] = {Rational(60 + 10 * pick(0, 6)), Rational(120 + 10 * pick(0, 10))};
      Rational cf(pick(0, 10), 10);
      cf.canonicalize();
      inst.capacity_factor[static_cast<size_t>(k)][2] = cf;
    }
  } else {
    inst.capacity_factor.assign(static_cast<size_t>(spec.horizon), {});
    inst.demand_electric.assign(static_cast<size_t>(spec.horizon), {});
  }
  validate_instance(inst);
  return inst;
}

}  // namespace gasmip
