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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gasmip/mip_model.hpp"

namespace gasmip {

// Fixed-form MPS export. Names longer than 8 characters (or containing
// whitespace) are replaced by "C"/"R"/"S" + base-36 counters; the maps below
// translate back to model names.
struct MpsExport {
  std::string text;
  std::vector<std::string> column_names;  // indexed by VarId
  std::vector<std::string> row_names;     // indexed by constraint row
};

inline constexpr size_t kMpsNameLimit = 8;

MpsExport export_mps(const MipModel& model);

// Reads fixed- or free-form MPS (whitespace separated fields; names must not
// contain blanks). Supports N/L/G/E rows, MARKER INTORG/INTEND, RHS (including
// the objective constant), BOUNDS (UP LO FX FR MI PL BV LI UI) and CPLEX-style
// SOS sections. Throws ModelError with a line number on malformed input.
MipModel import_mps(std::string_view text);

}  // namespace gasmip
