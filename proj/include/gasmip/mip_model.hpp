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

// Solver-agnostic MILP representation.
//
// Coefficients and bounds are exact rationals. A model only ever grows:
// variables and constraints are appended and referenced by dense ids, so
// read-only views (stats, export, relaxation copies) are safe to take from
// several threads once construction is finished.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gasmip/rational.hpp"

namespace gasmip {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarId {
  int32_t value = -1;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

enum class VarKind { kContinuous, kBinary, kSos2Member };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

const char* ToString(VarKind kind);
const char* ToString(Sense sense);

// Structured variable label: family plus index tuple, printed as
// "family[i1,i2]" ("family" alone when there are no indices).
struct VarLabel {
  std::string family;
  std::vector<std::string> index;

  std::string str() const;
};

struct VarSpec {
  VarLabel label;
  VarKind kind = VarKind::kContinuous;
  std::optional<Rational> lower = Rational(0);  // nullopt means -inf
  std::optional<Rational> upper;                // nullopt means +inf
};

struct Variable {
  VarLabel label;
  std::string name;
  VarKind kind = VarKind::kContinuous;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

struct Term {
  VarId var;
  Rational coef;
};

// Accumulates a linear form; repeated variables are merged and exact zeros
// dropped, so the stored terms never contain duplicates.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(VarId var, const Rational& coef = 1) { add(var, coef); }  // NOLINT

  LinearExpr& add(VarId var, const Rational& coef);
  LinearExpr& add(const LinearExpr& other, const Rational& scale = 1);
  LinearExpr& add_constant(const Rational& value);

  LinearExpr& operator+=(const LinearExpr& other) { return add(other); }
  LinearExpr& operator-=(const LinearExpr& other) { return add(other, -1); }

  std::vector<Term> terms() const;
  const Rational& constant() const { return constant_; }
  bool empty() const { return coefs_.empty(); }

 private:
  std::map<int32_t, Rational> coefs_;
  Rational constant_ = 0;
};

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs);
LinearExpr operator-(LinearExpr lhs, const LinearExpr& rhs);
LinearExpr operator*(const Rational& scale, const LinearExpr& expr);

struct LinearConstraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  Rational rhs = 0;
  std::string tag;  // constraint family, e.g. "z_cut_a" or "gas_balance"
};

struct Sos2Group {
  std::string name;
  std::vector<VarId> members;
  std::vector<Rational> weights;  // strictly increasing
};

struct Objective {
  std::vector<Term> terms;
  Rational constant = 0;
};

struct ModelStats {
  int64_t n_constraints = 0;
  int64_t n_continuous = 0;  // includes SOS2 members
  int64_t n_binary = 0;
  int64_t n_sos2_groups = 0;
  int64_t n_nonzeros = 0;

  friend bool operator==(const ModelStats&, const ModelStats&) = default;
};

class MipModel {
 public:
  MipModel() = default;
  explicit MipModel(std::string name) : name_(std::move(name)) {}

  // Throws ModelError on a duplicate name, inverted bounds, or binary bounds
  // outside [0, 1].
  VarId add_variable(const VarSpec& spec);
  VarId add_continuous(VarLabel label, std::optional<Rational> lower = Rational(0),
                       std::optional<Rational> upper = std::nullopt);
  VarId add_binary(VarLabel label);

  // Adds `expr (sense) rhs`; the constant part of `expr` moves to the rhs.
  // Returns the row index. Throws on an empty tag or unknown variable.
  int add_constraint(const LinearExpr& expr, Sense sense, const Rational& rhs, std::string tag);
  int add_constraint(const LinearExpr& lhs, Sense sense, const LinearExpr& rhs, std::string tag);

  void add_sos2(std::string name, std::vector<VarId> members, std::vector<Rational> weights);

  void set_objective(const LinearExpr& expr);
  void set_bounds(VarId var, std::optional<Rational> lower, std::optional<Rational> upper);
  void set_kind(VarId var, VarKind kind);

  const std::string& name() const { return name_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<Sos2Group>& sos2_groups() const { return sos2_groups_; }
  const Objective& objective() const { return objective_; }

  const Variable& variable(VarId id) const { return variables_.at(static_cast<size_t>(id.value)); }
  std::optional<VarId> find(const std::string& name) const;
  VarId get(const std::string& name) const;  // throws ModelError if absent
  int num_variables() const { return static_cast<int>(variables_.size()); }

 private:
  void check_var(VarId id) const;

  std::string name_ = "model";
  std::vector<Variable> variables_;
  std::unordered_map<std::string, int32_t> by_name_;
  std::vector<LinearConstraint> constraints_;
  std::vector<Sos2Group> sos2_groups_;
  Objective objective_;
};

ModelStats model_stats(const MipModel& model);

// Binaries become continuous on [0,1]; SOS2 groups are dropped and their
// members become plain continuous variables. Constraints are unchanged.
MipModel relax(const MipModel& model);

// Number of constraints per tag.
std::map<std::string, int64_t> constraint_counts_by_tag(const MipModel& model);

// Structured debug dump; schema in docs/formats.md.
std::string to_json(const MipModel& model, int indent = 2);

}  // namespace gasmip
