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

#include "gasmip/mip_model.hpp"

#include <utility>

#include "json.hpp"

namespace gasmip {

const char* ToString(VarKind kind) {
  switch (kind) {
    case VarKind::kContinuous:
      return "continuous";
    case VarKind::kBinary:
      return "binary";
    case VarKind::kSos2Member:
      return "sos2-member";
  }
  return "?";
}

const char* ToString(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kEqual:
      return "=";
    case Sense::kGreaterEqual:
      return ">=";
  }
  return "?";
}

std::string VarLabel::str() const {
  if (index.empty()) return family;
  std::string out = family + "[";
  for (size_t i = 0; i < index.size(); ++i) {
    if (i > 0) out += ",";
    out += index[i];
  }
  out += "]";
  return out;
}

LinearExpr& LinearExpr::add(VarId var, const Rational& coef) {
  if (coef == 0) return *this;
  auto [it, inserted] = coefs_.try_emplace(var.value, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) coefs_.erase(it);
  }
  return *this;
}

LinearExpr& LinearExpr::add(const LinearExpr& other, const Rational& scale) {
  for (const auto& [var, coef] : other.coefs_) add(VarId{var}, coef * scale);
  constant_ += other.constant_ * scale;
  return *this;
}

LinearExpr& LinearExpr::add_constant(const Rational& value) {
  constant_ += value;
  return *this;
}

std::vector<Term> LinearExpr::terms() const {
  std::vector<Term> out;
  out.reserve(coefs_.size());
  for (const auto& [var, coef] : coefs_) out.push_back({VarId{var}, coef});
  return out;
}

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs) { return lhs.add(rhs); }
LinearExpr operator-(LinearExpr lhs, const LinearExpr& rhs) { return lhs.add(rhs, -1); }
LinearExpr operator*(const Rational& scale, const LinearExpr& expr) {
  LinearExpr out;
  out.add(expr, scale);
  return out;
}

VarId MipModel::add_variable(const VarSpec& spec) {
  std::string name = spec.label.str();
  if (name.empty()) throw ModelError("variable name must not be empty");
  if (by_name_.contains(name)) throw ModelError("duplicate variable name '" + name + "'");
  std::optional<Rational> lower = spec.lower;
  std::optional<Rational> upper = spec.upper;
  if (spec.kind == VarKind::kBinary) {
    if (!lower) lower = Rational(0);
    if (!upper) upper = Rational(1);
    if (*lower < 0 || *upper > 1) {
      throw ModelError("binary variable '" + name + "' has bounds outside [0,1]");
    }
  }
  if (lower && upper && *lower > *upper) {
    throw ModelError("variable '" + name + "' has lower bound above upper bound");
  }
  const VarId id{static_cast<int32_t>(variables_.size())};
  by_name_.emplace(name, id.value);
  variables_.push_back(Variable{spec.label, std::move(name), spec.kind, lower, upper});
  return id;
}

VarId MipModel::add_continuous(VarLabel label, std::optional<Rational> lower,
                               std::optional<Rational> upper) {
  return add_variable(VarSpec{std::move(label), VarKind::kContinuous, std::move(lower),
                              std::move(upper)});
}

VarId MipModel::add_binary(VarLabel label) {
  return add_variable(VarSpec{std::move(label), VarKind::kBinary, Rational(0), Rational(1)});
}

void MipModel::check_var(VarId id) const {
  if (id.value < 0 || id.value >= num_variables()) {
    throw ModelError("reference to unknown variable id " + std::to_string(id.value));
  }
}

int MipModel::add_constraint(const LinearExpr& expr, Sense sense, const Rational& rhs,
                             std::string tag) {
  if (tag.empty()) throw ModelError("constraint tag must not be empty");
  LinearConstraint row;
  row.terms = expr.terms();
  for (const Term& t : row.terms) check_var(t.var);
  row.sense = sense;
  row.rhs = rhs - expr.constant();
  row.name = tag + "#" + std::to_string(constraints_.size());
  row.tag = std::move(tag);
  constraints_.push_back(std::move(row));
  return static_cast<int>(constraints_.size()) - 1;
}

int MipModel::add_constraint(const LinearExpr& lhs, Sense sense, const LinearExpr& rhs,
                             std::string tag) {
  return add_constraint(lhs - rhs, sense, Rational(0), std::move(tag));
}

void MipModel::add_sos2(std::string name, std::vector<VarId> members,
                        std::vector<Rational> weights) {
  if (members.size() < 2) throw ModelError("SOS2 group '" + name + "' needs at least 2 members");
  if (weights.size() != members.size()) {
    throw ModelError("SOS2 group '" + name + "' weight count mismatch");
  }
  for (size_t i = 1; i < weights.size(); ++i) {
    if (!(weights[i - 1] < weights[i])) {
      throw ModelError("SOS2 group '" + name + "' weights must be strictly increasing");
    }
  }
  for (VarId v : members) {
    check_var(v);
    variables_[static_cast<size_t>(v.value)].kind = VarKind::kSos2Member;
  }
  sos2_groups_.push_back(Sos2Group{std::move(name), std::move(members), std::move(weights)});
}

void MipModel::set_objective(const LinearExpr& expr) {
  objective_.terms = expr.terms();
  for (const Term& t : objective_.terms) check_var(t.var);
  objective_.constant = expr.constant();
}

void MipModel::set_bounds(VarId var, std::optional<Rational> lower, std::optional<Rational> upper) {
  check_var(var);
  if (lower && upper && *lower > *upper) {
    throw ModelError("variable '" + variable(var).name + "' has lower bound above upper bound");
  }
  Variable& v = variables_[static_cast<size_t>(var.value)];
  v.lower = std::move(lower);
  v.upper = std::move(upper);
}

void MipModel::set_kind(VarId var, VarKind kind) {
  check_var(var);
  Variable& v = variables_[static_cast<size_t>(var.value)];
  if (kind == VarKind::kBinary) {
    if (!v.lower) v.lower = Rational(0);
    if (!v.upper) v.upper = Rational(1);
    if (*v.lower < 0 || *v.upper > 1) {
      throw ModelError("binary variable '" + v.name + "' has bounds outside [0,1]");
    }
  }
  v.kind = kind;
}

std::optional<VarId> MipModel::find(const std::string& name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return VarId{it->second};
}

VarId MipModel::get(const std::string& name) const {
  if (auto id = find(name)) return *id;
  throw ModelError("no variable named '" + name + "'");
}

ModelStats model_stats(const MipModel& model) {
  ModelStats stats;
  stats.n_constraints = static_cast<int64_t>(model.constraints().size());
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) {
      ++stats.n_binary;
    } else {
      ++stats.n_continuous;
    }
  }
  stats.n_sos2_groups = static_cast<int64_t>(model.sos2_groups().size());
  for (const LinearConstraint& row : model.constraints()) {
    for (const Term& t : row.terms) {
      if (t.coef != 0) ++stats.n_nonzeros;
    }
  }
  return stats;
}

MipModel relax(const MipModel& model) {
  MipModel out(model.name() + "_relaxed");
  for (const Variable& v : model.variables()) {
    VarSpec spec{v.label, VarKind::kContinuous, v.lower, v.upper};
    if (v.kind == VarKind::kBinary) {
      spec.lower = v.lower ? v.lower : Rational(0);
      spec.upper = v.upper ? v.upper : Rational(1);
    }
    out.add_variable(spec);
  }
  for (const LinearConstraint& row : model.constraints()) {
    LinearExpr expr;
    for (const Term& t : row.terms) expr.add(t.var, t.coef);
    out.add_constraint(expr, row.sense, row.rhs, row.tag);
  }
  LinearExpr obj;
  for (const Term& t : model.objective().terms) obj.add(t.var, t.coef);
  obj.add_constant(model.objective().constant);
  out.set_objective(obj);
  return out;
}

std::map<std::string, int64_t> constraint_counts_by_tag(const MipModel& model) {
  std::map<std::string, int64_t> counts;
  for (const LinearConstraint& row : model.constraints()) ++counts[row.tag];
  return counts;
}

std::string to_json(const MipModel& model, int indent) {
  using nlohmann::ordered_json;
  auto bound = [](const std::optional<Rational>& b) -> ordered_json {
    if (!b) return nullptr;
    return ToFractionString(*b);
  };
  auto terms = [&](const std::vector<Term>& ts) {
    ordered_json arr = ordered_json::array();
    for (const Term& t : ts) {
      arr.push_back({{"var", model.variable(t.var).name}, {"coef", ToFractionString(t.coef)}});
    }
    return arr;
  };
  ordered_json doc;
  doc["format"] = "gasmip-model";
  doc["version"] = 1;
  doc["name"] = model.name();
  doc["direction"] = "minimize";
  ordered_json vars = ordered_json::array();
  for (const Variable& v : model.variables()) {
    vars.push_back({{"name", v.name},
                    {"family", v.label.family},
                    {"index", v.label.index},
                    {"kind", ToString(v.kind)},
                    {"lower", bound(v.lower)},
                    {"upper", bound(v.upper)}});
  }
  doc["variables"] = std::move(vars);
  ordered_json rows = ordered_json::array();
  for (const LinearConstraint& row : model.constraints()) {
    rows.push_back({{"name", row.name},
                    {"tag", row.tag},
                    {"terms", terms(row.terms)},
                    {"sense", ToString(row.sense)},
                    {"rhs", ToFractionString(row.rhs)}});
  }
  doc["constraints"] = std::move(rows);
  ordered_json sos = ordered_json::array();
  for (const Sos2Group& g : model.sos2_groups()) {
    ordered_json members = ordered_json::array();
    ordered_json weights = ordered_json::array();
    for (VarId v : g.members) members.push_back(model.variable(v).name);
    for (const Rational& w : g.weights) weights.push_back(ToFractionString(w));
    sos.push_back({{"name", g.name}, {"members", members}, {"weights", weights}});
  }
  doc["sos2"] = std::move(sos);
  doc["objective"] = {{"terms", terms(model.objective().terms)},
                      {"constant", ToFractionString(model.objective().constant)}};
  return doc.dump(indent);
}

}  // namespace gasmip
