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

// A-priori parameter tables for the Z linearization of one pipeline.
//
// Grid points are addressed 0-based here; "point z" in the docs below means
// index z-1. All tables are exact integers.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasmip/grid.hpp"

namespace gasmip {

// Square integer table with a per-entry "defined" flag.
struct IntTable {
  size_t n = 0;
  std::vector<Integer> value;
  std::vector<bool> defined;

  explicit IntTable(size_t size = 0) : n(size), value(size * size), defined(size * size, false) {}
  const Integer& at(size_t i, size_t j) const { return value[i * n + j]; }
  bool has(size_t i, size_t j) const { return defined[i * n + j]; }
  void set(size_t i, size_t j, Integer v) {
    value[i * n + j] = std::move(v);
    defined[i * n + j] = true;
  }
  friend bool operator==(const IntTable&, const IntTable&) = default;
};

// A(z, zt) = min(P_z F_zt - F_z P_zt, 0) for z != zt.
// B(zt, z) = max(F_z P_zt - P_z F_zt, 0) and C(z, zt) = min(F_z P_zt - P_z F_zt, 0),
// both defined for 2nd point <= zt <= z. Undefined entries read as zero.
struct AbcTables {
  IntTable A;
  IntTable B;  // indexed (zt, z)
  IntTable C;  // indexed (z, zt)
  friend bool operator==(const AbcTables&, const AbcTables&) = default;
};

AbcTables compute_abc(const PiecewiseGrid& grid);

// One set of grid points sharing the same value of Z_{u,v,.}.
struct RepeatedSet {
  Integer value;
  std::vector<size_t> points;  // ascending
  friend bool operator==(const RepeatedSet&, const RepeatedSet&) = default;
};

// A direction (u, v) that survived the multiples elimination.
struct KeptDirection {
  int64_t u = 0;
  int64_t v = 0;
  std::vector<Integer> z;            // Z_{u,v,z} = u F_z - v P_z
  std::vector<RepeatedSet> sets;     // Z-hat partition, ordered by first point
  friend bool operator==(const KeptDirection&, const KeptDirection&) = default;
};

// A cut pair for tuple (u, v, w); only tuples with a nonzero shared value
// are materialized.
struct ZTuple {
  int64_t u = 0;
  int64_t v = 0;
  int w = 0;                     // 1-based index into the direction's sets
  Integer sgn;                   // shared value c_w
  Integer rhs;                   // -|c_w|
  std::vector<Integer> aux;      // c_w broadcast over z
  std::vector<Integer> pre;      // Z_{u,v,z}
  std::vector<Integer> D, E, Fc; // cut coefficients over z
  friend bool operator==(const ZTuple&, const ZTuple&) = default;
};

struct ZParams {
  std::string grid_hash;
  PiecewiseGrid grid;
  AbcTables abc;
  int64_t uv_max = 0;
  std::vector<KeptDirection> directions;
  std::vector<ZTuple> tuples;
  friend bool operator==(const ZParams&, const ZParams&) = default;
};

// Full table computation. Only (u, v) pairs that can produce a repeated
// value are visited: u (F_b - F_a) = v (P_b - P_a) for some pair a < b.
ZParams compute_z_tables(const PiecewiseGrid& grid);

// Cut coefficients for value phi against shared value c (c != 0).
struct CutCoefficients {
  Integer D, E, F;
};
CutCoefficients cut_coefficients(const Integer& phi, const Integer& c);

// Precomputes several grids concurrently (at most `threads` workers; 0 means
// hardware concurrency). Output order follows the input order.
std::vector<ZParams> compute_z_tables_parallel(const std::vector<PiecewiseGrid>& grids,
                                               unsigned threads = 0);

// Versioned on-disk cache, one JSON document holding entries keyed by grid
// hash. A missing or unreadable file is treated as empty.
class ZParamsCache {
 public:
  static constexpr int kVersion = 1;

  explicit ZParamsCache(std::string path) : path_(std::move(path)) {}

  // Returns cached params for the grid, or nullopt. Sets `warning` when the
  // file exists but cannot be used.
  std::optional<ZParams> lookup(const PiecewiseGrid& grid, std::string* warning = nullptr) const;
  void store(const std::vector<ZParams>& params) const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string zparams_to_json(const ZParams& params);
ZParams zparams_from_json(const std::string& text);

}  // namespace gasmip
