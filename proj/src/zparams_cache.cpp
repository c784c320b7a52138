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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gasmip/preprocess.hpp"
#include "json.hpp"

namespace gasmip {
namespace {

using nlohmann::ordered_json;

ordered_json IntsToJson(const std::vector<Integer>& xs) {
  ordered_json arr = ordered_json::array();
  for (const Integer& x : xs) arr.push_back(x.get_str());
  return arr;
}

std::vector<Integer> IntsFromJson(const ordered_json& arr) {
  std::vector<Integer> xs;
  for (const auto& x : arr) xs.emplace_back(x.get<std::string>(), 10);
  return xs;
}

ordered_json TableToJson(const IntTable& t) {
  ordered_json entries = ordered_json::array();
  for (size_t i = 0; i < t.n; ++i) {
    for (size_t j = 0; j < t.n; ++j) {
      if (t.has(i, j)) entries.push_back({i, j, t.at(i, j).get_str()});
    }
  }
  return {{"n", t.n}, {"entries", entries}};
}

IntTable TableFromJson(const ordered_json& j) {
  IntTable t(j.at("n").get<size_t>());
  for (const auto& e : j.at("entries")) {
    t.set(e.at(0).get<size_t>(), e.at(1).get<size_t>(), Integer(e.at(2).get<std::string>(), 10));
  }
  return t;
}

ordered_json ParamsToJson(const ZParams& p) {
  ordered_json dirs = ordered_json::array();
  for (const KeptDirection& d : p.directions) {
    ordered_json sets = ordered_json::array();
    for (const RepeatedSet& s : d.sets) {
      sets.push_back({{"value", s.value.get_str()}, {"points", s.points}});
    }
    dirs.push_back({{"u", d.u}, {"v", d.v}, {"z", IntsToJson(d.z)}, {"sets", sets}});
  }
  ordered_json tuples = ordered_json::array();
  for (const ZTuple& t : p.tuples) {
    tuples.push_back({{"u", t.u},
                      {"v", t.v},
                      {"w", t.w},
                      {"sgn", t.sgn.get_str()},
                      {"rhs", t.rhs.get_str()},
                      {"aux", IntsToJson(t.aux)},
                      {"pre", IntsToJson(t.pre)},
                      {"D", IntsToJson(t.D)},
                      {"E", IntsToJson(t.E)},
                      {"F", IntsToJson(t.Fc)}});
  }
  return {{"grid_hash", p.grid_hash},
          {"F", IntsToJson(p.grid.F)},
          {"P", IntsToJson(p.grid.P)},
          {"A", TableToJson(p.abc.A)},
          {"B", TableToJson(p.abc.B)},
          {"C", TableToJson(p.abc.C)},
          {"uv_max", p.uv_max},
          {"directions", dirs},
          {"tuples", tuples}};
}

ZParams ParamsFromJson(const ordered_json& j) {
  ZParams p;
  p.grid_hash = j.at("grid_hash").get<std::string>();
  p.grid.F = IntsFromJson(j.at("F"));
  p.grid.P = IntsFromJson(j.at("P"));
  p.abc.A = TableFromJson(j.at("A"));
  p.abc.B = TableFromJson(j.at("B"));
  p.abc.C = TableFromJson(j.at("C"));
  p.uv_max = j.at("uv_max").get<int64_t>();
  for (const auto& d : j.at("directions")) {
    KeptDirection kd;
    kd.u = d.at("u").get<int64_t>();
    kd.v = d.at("v").get<int64_t>();
    kd.z = IntsFromJson(d.at("z"));
    for (const auto& s : d.at("sets")) {
      kd.sets.push_back(RepeatedSet{Integer(s.at("value").get<std::string>(), 10),
                                    s.at("points").get<std::vector<size_t>>()});
    }
    p.directions.push_back(std::move(kd));
  }
  for (const auto& t : j.at("tuples")) {
    ZTuple zt;
    zt.u = t.at("u").get<int64_t>();
    zt.v = t.at("v").get<int64_t>();
    zt.w = t.at("w").get<int>();
    zt.sgn = Integer(t.at("sgn").get<std::string>(), 10);
    zt.rhs = Integer(t.at("rhs").get<std::string>(), 10);
    zt.aux = IntsFromJson(t.at("aux"));
    zt.pre = IntsFromJson(t.at("pre"));
    zt.D = IntsFromJson(t.at("D"));
    zt.E = IntsFromJson(t.at("E"));
    zt.Fc = IntsFromJson(t.at("F"));
    p.tuples.push_back(std::move(zt));
  }
  if (p.grid.hash() != p.grid_hash) throw GridError("cached entry hash does not match its grid");
  return p;
}

}  // namespace

std::string zparams_to_json(const ZParams& params) { return ParamsToJson(params).dump(1); }

ZParams zparams_from_json(const std::string& text) {
  return ParamsFromJson(ordered_json::parse(text));
}

std::optional<ZParams> ZParamsCache::lookup(const PiecewiseGrid& grid,
                                            std::string* warning) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  try {
    const ordered_json doc = ordered_json::parse(in);
    if (doc.at("format").get<std::string>() != "gasmip-zparams" ||
        doc.at("version").get<int>() != kVersion) {
      if (warning) *warning = "cache " + path_ + " has an unsupported version; rebuilding";
      return std::nullopt;
    }
    const std::string key = grid.hash();
    const auto& entries = doc.at("entries");
    if (!entries.contains(key)) return std::nullopt;
    ZParams p = ParamsFromJson(entries.at(key));
    if (!(p.grid == grid)) {
      if (warning) *warning = "cache " + path_ + " hash collision; rebuilding";
      return std::nullopt;
    }
    return p;
  } catch (const std::exception& e) {
    if (warning) *warning = "cache " + path_ + " is corrupted (" + e.what() + "); rebuilding";
    return std::nullopt;
  }
}

void ZParamsCache::store(const std::vector<ZParams>& params) const {
  ordered_json doc;
  {
    std::ifstream in(path_);
    if (in) {
      try {
        doc = ordered_json::parse(in);
        if (doc.value("format", "") != "gasmip-zparams" || doc.value("version", 0) != kVersion) {
          doc = ordered_json();
        }
      } catch (const std::exception&) {
        doc = ordered_json();
      }
    }
  }
  if (doc.is_null()) {
    doc["format"] = "gasmip-zparams";
    doc["version"] = kVersion;
    doc["entries"] = ordered_json::object();
  }
  for (const ZParams& p : params) doc["entries"][p.grid_hash] = ParamsToJson(p);
  const std::filesystem::path target(path_);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw GridError("cannot write cache file " + tmp);
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace gasmip
