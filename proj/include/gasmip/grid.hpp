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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gasmip/rational.hpp"

namespace gasmip {

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer (flow, pressure-gradient) breakpoints of one pipeline. Index 0 is
// the origin; both sequences are strictly increasing.
struct PiecewiseGrid {
  std::vector<Integer> F;
  std::vector<Integer> P;

  size_t size() const { return F.size(); }
  // Stable 64-bit FNV-1a digest of the grid values, printed as 16 hex digits.
  std::string hash() const;
  friend bool operator==(const PiecewiseGrid&, const PiecewiseGrid&) = default;
};

// Throws GridError unless F/P have equal length >= 2, start at 0, are
// strictly increasing.
void validate_grid(const PiecewiseGrid& grid);

// Nearest integer to sqrt(x) for x >= 0, ties rounded up. Exact.
Integer RoundSqrt(const Rational& x);

// F_z = round(sqrt(flow_scale * P_z)); ties after rounding are broken by
// bumping the later point by +1. Throws GridError if a bump pushes the last
// flow above `flow_cap` (when given).
PiecewiseGrid grid_from_pressures(const std::vector<Integer>& P, const Rational& flow_scale,
                                  const std::optional<Rational>& flow_cap = std::nullopt);

struct GridRequest {
  Rational resistance;               // R^G of the pipeline
  Integer pressure_range;            // largest |p_m - p_n| admitted by node bounds
  int n_segments = 5;
  Rational reference_pressure_sum;   // p_m + p_n used to turn dp into flow
  std::optional<Rational> flow_cap;  // F-bar, checked only on tie bumps
};

// Equidistant integer pressure gradients P_z = (z-1) * floor(range / n),
// flows from grid_from_pressures with flow_scale = R * reference.
PiecewiseGrid generate_grid(const GridRequest& request);

// Value of the piecewise-linear interpolant through (P_z, F_z) at dp >= 0.
// Beyond the last breakpoint the last segment is extended.
Rational interpolate_flow(const PiecewiseGrid& grid, const Rational& dp);

}  // namespace gasmip
