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

#include "gasmip/mps.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gasmip {
namespace {

bool FitsFixedField(const std::string& name) {
  if (name.empty() || name.size() > kMpsNameLimit) return false;
  return std::none_of(name.begin(), name.end(),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

std::string Base36(uint64_t value, size_t width) {
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out;
  do {
    out.push_back(kDigits[value % 36]);
    value /= 36;
  } while (value > 0);
  while (out.size() < width) out.push_back('0');
  std::reverse(out.begin(), out.end());
  return out;
}

// Keeps names that already fit and are unique, mangles the rest. Generated
// names skip anything already taken, so the result is collision free.
std::vector<std::string> MangleNames(const std::vector<std::string>& names, char prefix,
                                     std::unordered_set<std::string>& taken) {
  std::vector<std::string> out(names.size());
  std::vector<size_t> pending;
  for (size_t i = 0; i < names.size(); ++i) {
    if (FitsFixedField(names[i]) && !taken.contains(names[i])) {
      out[i] = names[i];
      taken.insert(names[i]);
    } else {
      pending.push_back(i);
    }
  }
  uint64_t counter = 0;
  for (size_t i : pending) {
    std::string candidate;
    do {
      candidate = std::string(1, prefix) + Base36(counter++, kMpsNameLimit - 1);
    } while (taken.contains(candidate));
    taken.insert(candidate);
    out[i] = candidate;
  }
  return out;
}

std::string Field(const std::string& s, size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size(), ' ');
}

// One entry per line, columns aligned to the classic 2/5/15/25 layout.
void WriteEntry(std::ostringstream& out, const std::string& f1, const std::string& f2,
                const std::string& f3, const std::string& f4) {
  out << ' ' << Field(f1, 2) << ' ' << Field(f2, 8) << "  " << Field(f3, 8) << "  " << f4
      << '\n';
}

std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

MpsExport export_mps(const MipModel& model) {
  MpsExport result;
  std::unordered_set<std::string> taken{"OBJ", "RHS", "BND", "MARKER"};
  std::vector<std::string> var_names;
  var_names.reserve(model.variables().size());
  for (const Variable& v : model.variables()) var_names.push_back(v.name);
  result.column_names = MangleNames(var_names, 'C', taken);
  std::vector<std::string> row_names;
  for (const LinearConstraint& row : model.constraints()) row_names.push_back(row.name);
  result.row_names = MangleNames(row_names, 'R', taken);
  std::vector<std::string> sos_names;
  for (const Sos2Group& g : model.sos2_groups()) sos_names.push_back(g.name);
  const std::vector<std::string> sos_mangled = MangleNames(sos_names, 'S', taken);

  // Column-major view of the constraint matrix.
  std::vector<std::vector<std::pair<size_t, Rational>>> columns(model.variables().size());
  for (size_t r = 0; r < model.constraints().size(); ++r) {
    for (const Term& t : model.constraints()[r].terms) {
      columns[static_cast<size_t>(t.var.value)].emplace_back(r, t.coef);
    }
  }
  std::vector<std::optional<Rational>> obj(model.variables().size());
  for (const Term& t : model.objective().terms) obj[static_cast<size_t>(t.var.value)] = t.coef;

  std::ostringstream out;
  std::string model_name = model.name();
  std::replace_if(model_name.begin(), model_name.end(),
                  [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }, '_');
  out << "NAME          " << model_name << '\n';
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (size_t r = 0; r < model.constraints().size(); ++r) {
    const char* type = "L";
    switch (model.constraints()[r].sense) {
      case Sense::kLessEqual:
        type = "L";
        break;
      case Sense::kEqual:
        type = "E";
        break;
      case Sense::kGreaterEqual:
        type = "G";
        break;
    }
    out << ' ' << Field(type, 2) << ' ' << result.row_names[r] << '\n';
  }
  out << "COLUMNS\n";
  for (size_t j = 0; j < columns.size(); ++j) {
    const std::string& col = result.column_names[j];
    if (obj[j]) WriteEntry(out, "", col, "OBJ", ToDecimalString(*obj[j]));
    for (const auto& [r, coef] : columns[j]) {
      WriteEntry(out, "", col, result.row_names[r], ToDecimalString(coef));
    }
    if (!obj[j] && columns[j].empty()) WriteEntry(out, "", col, "OBJ", "0");
  }
  out << "RHS\n";
  if (model.objective().constant != 0) {
    WriteEntry(out, "", "RHS", "OBJ", ToDecimalString(-model.objective().constant));
  }
  for (size_t r = 0; r < model.constraints().size(); ++r) {
    const Rational& rhs = model.constraints()[r].rhs;
    if (rhs != 0) WriteEntry(out, "", "RHS", result.row_names[r], ToDecimalString(rhs));
  }
  out << "BOUNDS\n";
  for (size_t j = 0; j < model.variables().size(); ++j) {
    const Variable& v = model.variables()[j];
    const std::string& col = result.column_names[j];
    if (v.kind == VarKind::kBinary && v.lower && *v.lower == 0 && v.upper && *v.upper == 1) {
      WriteEntry(out, "BV", "BND", col, "");
      continue;
    }
    if (v.kind == VarKind::kBinary) {
      // Binary with tightened bounds: integer column with explicit bounds.
      WriteEntry(out, "LI", "BND", col, ToDecimalString(*v.lower));
      WriteEntry(out, "UI", "BND", col, ToDecimalString(*v.upper));
      continue;
    }
    if (v.lower && v.upper && *v.lower == *v.upper) {
      WriteEntry(out, "FX", "BND", col, ToDecimalString(*v.lower));
      continue;
    }
    if (!v.lower && !v.upper) {
      WriteEntry(out, "FR", "BND", col, "");
      continue;
    }
    if (!v.lower) {
      WriteEntry(out, "MI", "BND", col, "");
    } else if (*v.lower != 0) {
      WriteEntry(out, "LO", "BND", col, ToDecimalString(*v.lower));
    }
    if (v.upper) WriteEntry(out, "UP", "BND", col, ToDecimalString(*v.upper));
  }
  if (!model.sos2_groups().empty()) {
    out << "SOS\n";
    for (size_t g = 0; g < model.sos2_groups().size(); ++g) {
      const Sos2Group& group = model.sos2_groups()[g];
      out << " S2 SOS       " << sos_mangled[g] << '\n';
      for (size_t i = 0; i < group.members.size(); ++i) {
        WriteEntry(out, "", result.column_names[static_cast<size_t>(group.members[i].value)],
                   ToDecimalString(group.weights[i]), "");
      }
    }
  }
  out << "ENDATA\n";
  result.text = out.str();
  return result;
}

MipModel import_mps(std::string_view text) {
  enum class Section { kNone, kName, kRows, kColumns, kRhs, kRanges, kBounds, kSos, kEnd };
  struct RowInfo {
    Sense sense;
    LinearExpr expr;
    Rational rhs = 0;
  };
  struct ColInfo {
    bool integer = false;
    bool binary_bound = false;
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;
    bool upper_set = false;
  };

  std::string model_name = "model";
  std::string objective_row;
  std::vector<std::string> row_order;
  std::unordered_map<std::string, RowInfo> rows;
  std::vector<std::string> col_order;
  std::unordered_map<std::string, size_t> col_index;
  std::vector<ColInfo> cols;
  std::vector<std::pair<std::string, Rational>> objective_terms;
  Rational objective_constant = 0;
  struct SosInfo {
    std::string name;
    int type = 2;
    std::vector<std::pair<std::string, Rational>> members;
  };
  std::vector<SosInfo> sos;
  bool in_integer_block = false;

  auto error = [](size_t line_no, const std::string& msg) {
    return ModelError("MPS line " + std::to_string(line_no) + ": " + msg);
  };
  auto column = [&](const std::string& name) -> size_t {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    col_index.emplace(name, cols.size());
    col_order.push_back(name);
    cols.emplace_back();
    return cols.size() - 1;
  };

  Section section = Section::kNone;
  size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    const std::vector<std::string> tok = Tokenize(line);
    if (tok.empty()) continue;
    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (header) {
      const std::string& key = tok[0];
      if (key == "NAME") {
        section = Section::kName;
        if (tok.size() > 1) model_name = tok[1];
      } else if (key == "ROWS") {
        section = Section::kRows;
      } else if (key == "COLUMNS") {
        section = Section::kColumns;
      } else if (key == "RHS") {
        section = Section::kRhs;
      } else if (key == "RANGES") {
        section = Section::kRanges;
      } else if (key == "BOUNDS") {
        section = Section::kBounds;
      } else if (key == "SOS") {
        section = Section::kSos;
      } else if (key == "ENDATA") {
        section = Section::kEnd;
        break;
      } else if (key == "OBJSENSE" || key == "OBJSENSE:") {
        throw error(line_no, "OBJSENSE sections are not supported (models are minimization)");
      } else {
        throw error(line_no, "unknown section '" + key + "'");
      }
      continue;
    }
    switch (section) {
      case Section::kRows: {
        if (tok.size() < 2) throw error(line_no, "row entry needs type and name");
        const std::string& type = tok[0];
        if (type == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          continue;
        }
        Sense sense;
        if (type == "L") {
          sense = Sense::kLessEqual;
        } else if (type == "G") {
          sense = Sense::kGreaterEqual;
        } else if (type == "E") {
          sense = Sense::kEqual;
        } else {
          throw error(line_no, "unknown row type '" + type + "'");
        }
        if (rows.contains(tok[1])) throw error(line_no, "duplicate row '" + tok[1] + "'");
        rows.emplace(tok[1], RowInfo{sense, {}, 0});
        row_order.push_back(tok[1]);
        break;
      }
      case Section::kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") {
            in_integer_block = true;
          } else if (tok[2] == "'INTEND'") {
            in_integer_block = false;
          } else {
            throw error(line_no, "unknown marker '" + tok[2] + "'");
          }
          continue;
        }
        if (tok.size() != 3 && tok.size() != 5) throw error(line_no, "malformed COLUMNS entry");
        const size_t j = column(tok[0]);
        if (in_integer_block) cols[j].integer = true;
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          Rational value;
          try {
            value = ParseRational(tok[k + 1]);
          } catch (const std::invalid_argument& e) {
            throw error(line_no, e.what());
          }
          if (tok[k] == objective_row) {
            objective_terms.emplace_back(tok[0], value);
            continue;
          }
          auto it = rows.find(tok[k]);
          if (it == rows.end()) throw error(line_no, "unknown row '" + tok[k] + "'");
          it->second.expr.add(VarId{static_cast<int32_t>(j)}, value);
        }
        break;
      }
      case Section::kRhs: {
        // Optional RHS set name: entries come in (row, value) pairs after it.
        const size_t start = (tok.size() % 2 == 1) ? 1 : 0;
        for (size_t k = start; k + 1 < tok.size(); k += 2) {
          Rational value;
          try {
            value = ParseRational(tok[k + 1]);
          } catch (const std::invalid_argument& e) {
            throw error(line_no, e.what());
          }
          if (tok[k] == objective_row) {
            objective_constant = -value;
            continue;
          }
          auto it = rows.find(tok[k]);
          if (it == rows.end()) throw error(line_no, "unknown row '" + tok[k] + "'");
          it->second.rhs = value;
        }
        break;
      }
      case Section::kRanges:
        throw error(line_no, "RANGES are not supported");
      case Section::kBounds: {
        if (tok.size() < 3) throw error(line_no, "malformed BOUNDS entry");
        const std::string& type = tok[0];
        const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
        // Bound set name is optional; detect it by the token count.
        std::string col_name;
        std::optional<Rational> value;
        if (no_value) {
          col_name = tok.size() >= 3 ? tok[2] : tok[1];
          if (tok.size() == 2) col_name = tok[1];
        } else {
          if (tok.size() < 3) throw error(line_no, "bound needs a value");
          col_name = tok.size() >= 4 ? tok[2] : tok[1];
          try {
            value = ParseRational(tok.back());
          } catch (const std::invalid_argument& e) {
            throw error(line_no, e.what());
          }
        }
        auto it = col_index.find(col_name);
        if (it == col_index.end()) throw error(line_no, "unknown column '" + col_name + "'");
        ColInfo& c = cols[it->second];
        if (type == "UP") {
          c.upper = value;
          c.upper_set = true;
          if (*value < 0 && c.lower && *c.lower == 0) c.lower.reset();
        } else if (type == "LO") {
          c.lower = value;
        } else if (type == "FX") {
          c.lower = value;
          c.upper = value;
          c.upper_set = true;
        } else if (type == "FR") {
          c.lower.reset();
          c.upper.reset();
        } else if (type == "MI") {
          c.lower.reset();
        } else if (type == "PL") {
          c.upper.reset();
        } else if (type == "BV") {
          c.integer = true;
          c.binary_bound = true;
          c.lower = Rational(0);
          c.upper = Rational(1);
          c.upper_set = true;
        } else if (type == "LI") {
          c.integer = true;
          c.lower = value;
        } else if (type == "UI") {
          c.integer = true;
          c.upper = value;
          c.upper_set = true;
        } else {
          throw error(line_no, "unknown bound type '" + type + "'");
        }
        break;
      }
      case Section::kSos: {
        if (tok[0] == "S1" || tok[0] == "S2") {
          SosInfo info;
          info.type = tok[0] == "S1" ? 1 : 2;
          info.name = tok.back();
          sos.push_back(std::move(info));
          continue;
        }
        if (sos.empty()) throw error(line_no, "SOS member before set header");
        std::string name = tok[0];
        std::string weight = tok.size() > 1 ? tok[1] : "";
        if (const auto colon = name.find(':'); colon != std::string::npos) {
          weight = name.substr(colon + 1);
          name = name.substr(0, colon);
        }
        try {
          sos.back().members.emplace_back(name, ParseRational(weight));
        } catch (const std::invalid_argument& e) {
          throw error(line_no, e.what());
        }
        break;
      }
      default:
        throw error(line_no, "data outside of a section");
    }
  }
  if (section != Section::kEnd) throw ModelError("MPS: missing ENDATA");

  MipModel model(model_name);
  for (size_t j = 0; j < cols.size(); ++j) {
    const ColInfo& c = cols[j];
    VarSpec spec;
    spec.label = VarLabel{col_order[j], {}};
    spec.lower = c.lower;
    spec.upper = c.upper;
    if (c.integer) {
      // Integer markers without bounds default to [0,1] in this IR (no
      // general integers).
      if (!c.upper_set) spec.upper = Rational(1);
      if (!spec.lower) spec.lower = Rational(0);
      if (*spec.lower < 0 || *spec.upper > 1) {
        throw ModelError("MPS: general integer column '" + col_order[j] + "' is not supported");
      }
      spec.kind = VarKind::kBinary;
    }
    model.add_variable(spec);
  }
  for (const std::string& name : row_order) {
    RowInfo& info = rows.at(name);
    const int r = model.add_constraint(info.expr, info.sense, info.rhs, "mps");
    (void)r;
  }
  LinearExpr obj;
  for (const auto& [name, coef] : objective_terms) {
    obj.add(VarId{static_cast<int32_t>(col_index.at(name))}, coef);
  }
  obj.add_constant(objective_constant);
  model.set_objective(obj);
  for (const SosInfo& info : sos) {
    if (info.type != 2) throw ModelError("MPS: only S2 sets are supported");
    std::vector<VarId> members;
    std::vector<Rational> weights;
    for (const auto& [name, w] : info.members) {
      auto it = col_index.find(name);
      if (it == col_index.end()) throw ModelError("MPS: unknown SOS member '" + name + "'");
      members.push_back(VarId{static_cast<int32_t>(it->second)});
      weights.push_back(w);
    }
    model.add_sos2(info.name, std::move(members), std::move(weights));
  }
  return model;
}

}  // namespace gasmip
