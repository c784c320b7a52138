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

// Exact vertex enumeration of bounded polyhedra (double description method
// over GMP integers).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gasmip/mip_model.hpp"

namespace gasmip {

class PolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The polyhedron has a recession direction; `direction` is one such vector in
// the original coordinates.
class UnboundedPolyhedron : public PolytopeError {
 public:
  UnboundedPolyhedron(const std::string& what, std::vector<Rational> direction)
      : PolytopeError(what), direction(std::move(direction)) {}
  std::vector<Rational> direction;
};

class EnumerationBudgetExceeded : public PolytopeError {
 public:
  using PolytopeError::PolytopeError;
};

struct HRow {
  std::vector<Rational> a;
  Rational b;
};

// {x : a.x <= b for each inequality, a.x == b for each equality}.
struct HPolyhedron {
  size_t dim = 0;
  std::vector<HRow> inequalities;
  std::vector<HRow> equalities;
  std::vector<size_t> binary_coords;  // "binary-origin" coordinates
  std::vector<std::string> names;     // optional, one per coordinate

  void add_le(std::vector<Rational> a, Rational b) { inequalities.push_back({std::move(a), std::move(b)}); }
  void add_eq(std::vector<Rational> a, Rational b) { equalities.push_back({std::move(a), std::move(b)}); }
  // Throws PolytopeError on inconsistent row lengths or coordinate indices.
  void validate() const;
};

// Rows and variable bounds of `model` (SOS2 groups ignored). Binary variables
// plus any variable listed in `extra_marked` become binary-origin
// coordinates.
HPolyhedron to_hpolyhedron(const MipModel& model, const std::vector<VarId>& extra_marked = {});

struct VertexSet {
  std::vector<std::vector<Rational>> points;
  std::vector<int> fractional_counts;  // per point, over the marked coordinates
};

struct EnumerationOptions {
  size_t ray_budget = 2'000'000;  // abort when the working ray set grows past this
};

struct EnumerationStats {
  size_t reduced_dim = 0;   // after equality elimination
  size_t rows_processed = 0;
  size_t max_rays = 0;
};

// Complete vertex list. Empty polyhedron gives an empty set. Throws
// UnboundedPolyhedron or EnumerationBudgetExceeded.
VertexSet enumerate_vertices(const HPolyhedron& h, const EnumerationOptions& options = {},
                             EnumerationStats* stats = nullptr);

struct FractionalStats {
  size_t n_vertices = 0;
  size_t n_fractional = 0;
  double pct_fractional = 0.0;        // 100 * n_fractional / n_vertices
  double avg_fractional = 0.0;        // mean marked fractional coords over fractional vertices
};

// A vertex is fractional iff some listed coordinate is not 0 or 1.
FractionalStats fractional_stats(const VertexSet& v, const std::vector<size_t>& binary_coords);

// True iff x satisfies every row exactly.
bool satisfies(const HPolyhedron& h, const std::vector<Rational>& x);

// PORTA-style text: "DIM = n", "INEQUALITIES_SECTION", rows such as
// "(  1) 2x1-3/4x3 <= 5", "END". Equalities use "==".
std::string write_porta_ieq(const HPolyhedron& h);
HPolyhedron read_porta_ieq(const std::string& text);
// PORTA-style point list ("CONV_SECTION").
std::string write_porta_poi(const VertexSet& v, size_t dim);

}  // namespace gasmip
