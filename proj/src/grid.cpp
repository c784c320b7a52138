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

#include "gasmip/grid.hpp"

#include <cstdio>

namespace gasmip {

std::string PiecewiseGrid::hash() const {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const Integer& f : F) mix(f.get_str() + ",");
  mix("|");
  for (const Integer& p : P) mix(p.get_str() + ",");
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

void validate_grid(const PiecewiseGrid& grid) {
  if (grid.F.size() != grid.P.size()) throw GridError("grid F and P lengths differ");
  if (grid.F.size() < 2) throw GridError("grid needs at least 2 points");
  if (grid.F[0] != 0 || grid.P[0] != 0) throw GridError("grid must start at the origin");
  for (size_t z = 1; z < grid.F.size(); ++z) {
    if (grid.F[z] <= grid.F[z - 1] || grid.P[z] <= grid.P[z - 1]) {
      throw GridError("grid values must be strictly increasing (point " + std::to_string(z + 1) +
                      ")");
    }
  }
}

Integer RoundSqrt(const Rational& x) {
  if (x < 0) throw GridError("square root of a negative value");
  // floor(sqrt(x)) == isqrt(floor(x)) for rational x >= 0.
  Integer fl = x.get_num() / x.get_den();
  Integer n;
  mpz_sqrt(n.get_mpz_t(), fl.get_mpz_t());
  // Round up when x >= (n + 1/2)^2 = n^2 + n + 1/4.
  const Rational half_sq = Rational(n * n + n) + Rational(1, 4);
  if (x >= half_sq) n += 1;
  return n;
}

PiecewiseGrid grid_from_pressures(const std::vector<Integer>& P, const Rational& flow_scale,
                                  const std::optional<Rational>& flow_cap) {
  if (flow_scale <= 0) throw GridError("flow scale must be positive");
  PiecewiseGrid grid;
  grid.P = P;
  grid.F.reserve(P.size());
  for (size_t z = 0; z < P.size(); ++z) {
    Integer f = RoundSqrt(flow_scale * Rational(P[z]));
    if (z > 0 && f <= grid.F[z - 1]) {
      f = grid.F[z - 1] + 1;
      if (flow_cap && Rational(f) > *flow_cap) {
        throw GridError("grid point " + std::to_string(z + 1) +
                        " collapses after rounding and cannot be separated below capacity");
      }
    }
    grid.F.push_back(f);
  }
  validate_grid(grid);
  return grid;
}

PiecewiseGrid generate_grid(const GridRequest& request) {
  if (request.n_segments < 2) throw GridError("need at least 2 segments");
  if (request.reference_pressure_sum <= 0) {
    throw GridError("reference pressure sum must be positive");
  }
  if (request.resistance <= 0) throw GridError("resistance must be positive");
  const Integer step = request.pressure_range / request.n_segments;
  if (step < 1) {
    throw GridError("pressure range " + request.pressure_range.get_str() + " too small for " +
                    std::to_string(request.n_segments) + " integer segments");
  }
  std::vector<Integer> P;
  for (int z = 0; z <= request.n_segments; ++z) P.push_back(step * z);
  return grid_from_pressures(P, request.resistance * request.reference_pressure_sum,
                             request.flow_cap);
}

Rational interpolate_flow(const PiecewiseGrid& grid, const Rational& dp) {
  validate_grid(grid);
  if (dp < 0) throw GridError("interpolate_flow expects dp >= 0");
  size_t seg = 0;
  while (seg + 2 < grid.size() && Rational(grid.P[seg + 1]) < dp) ++seg;
  const Rational p0(grid.P[seg]);
  const Rational p1(grid.P[seg + 1]);
  const Rational f0(grid.F[seg]);
  const Rational f1(grid.F[seg + 1]);
  return f0 + (f1 - f0) * (dp - p0) / (p1 - p0);
}

}  // namespace gasmip
