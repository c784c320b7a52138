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

#include "gasmip/preprocess.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <utility>

namespace gasmip {
namespace {

// Canonical representative of the ray through a vector: entries divided by
// the gcd of their absolute values. Two nonzero vectors are positive
// multiples of each other iff their keys agree; all zero vectors share one key.
std::vector<Integer> RayKey(const std::vector<Integer>& vec) {
  Integer g = 0;
  for (const Integer& x : vec) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g == 0) return vec;
  std::vector<Integer> key;
  key.reserve(vec.size());
  for (const Integer& x : vec) key.push_back(x / g);
  return key;
}

std::vector<RepeatedSet> RepeatedSets(const std::vector<Integer>& vec) {
  std::vector<RepeatedSet> sets;
  std::vector<bool> used(vec.size(), false);
  for (size_t a = 0; a < vec.size(); ++a) {
    if (used[a]) continue;
    RepeatedSet set{vec[a], {a}};
    for (size_t b = a + 1; b < vec.size(); ++b) {
      if (!used[b] && vec[b] == vec[a]) {
        set.points.push_back(b);
        used[b] = true;
      }
    }
    if (set.points.size() >= 2) sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace

AbcTables compute_abc(const PiecewiseGrid& grid) {
  validate_grid(grid);
  const size_t n = grid.size();
  AbcTables t{IntTable(n), IntTable(n), IntTable(n)};
  const auto& F = grid.F;
  const auto& P = grid.P;
  for (size_t z = 0; z < n; ++z) {
    for (size_t zt = 0; zt < n; ++zt) {
      if (z != zt) t.A.set(z, zt, std::min<Integer>(P[z] * F[zt] - F[z] * P[zt], 0));
    }
  }
  for (size_t z = 1; z < n; ++z) {
    for (size_t zt = 1; zt <= z; ++zt) {
      const Integer chi = F[z] * P[zt] - P[z] * F[zt];
      t.B.set(zt, z, std::max<Integer>(chi, 0));
      t.C.set(z, zt, std::min<Integer>(chi, 0));
    }
  }
  return t;
}

CutCoefficients cut_coefficients(const Integer& phi, const Integer& c) {
  CutCoefficients out{0, 0, 0};
  if (c > 0) {
    if (phi <= c) {
      out.D = phi;
    } else {
      out.E = c;
      out.F = c - phi;
    }
  } else if (c < 0) {
    if (phi >= c) {
      out.D = -phi;
    } else {
      out.E = -c;
    }
    if (phi <= c) out.F = -c + phi;
  }
  return out;
}

ZParams compute_z_tables(const PiecewiseGrid& grid) {
  validate_grid(grid);
  ZParams out;
  out.grid = grid;
  out.grid_hash = grid.hash();
  out.abc = compute_abc(grid);
  const size_t n = grid.size();
  const auto& F = grid.F;
  const auto& P = grid.P;
  if (n < 3) return out;  // the range below needs a 2nd and a last point

  const Integer range = std::max<Integer>(F[n - 1] - F[1], P[n - 1] - P[1]);
  if (!range.fits_slong_p()) throw GridError("grid range too large");
  out.uv_max = range.get_si();

  // Each pair a < b with equal Z values needs u dF = v dP, so the candidates
  // are the multiples of the reduced direction (dP, dF) / gcd.
  std::set<std::pair<int64_t, int64_t>> candidates;
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      const Integer dP = P[b] - P[a];
      const Integer dF = F[b] - F[a];
      Integer g;
      mpz_gcd(g.get_mpz_t(), dP.get_mpz_t(), dF.get_mpz_t());
      const Integer u0 = dP / g;
      const Integer v0 = dF / g;
      if (u0 > range || v0 > range) continue;
      const int64_t u0i = u0.get_si();
      const int64_t v0i = v0.get_si();
      for (int64_t k = 1; k * u0i <= out.uv_max && k * v0i <= out.uv_max; ++k) {
        candidates.emplace(k * u0i, k * v0i);
      }
    }
  }

  std::set<std::vector<Integer>> kept_keys;
  for (const auto& [u, v] : candidates) {
    std::vector<Integer> vec(n);
    for (size_t z = 0; z < n; ++z) vec[z] = Integer(u) * F[z] - Integer(v) * P[z];
    std::vector<RepeatedSet> sets = RepeatedSets(vec);
    if (sets.empty()) continue;
    if (!kept_keys.insert(RayKey(vec)).second) continue;
    out.directions.push_back(KeptDirection{u, v, std::move(vec), std::move(sets)});
  }

  for (const KeptDirection& d : out.directions) {
    for (size_t w = 0; w < d.sets.size(); ++w) {
      const Integer& c = d.sets[w].value;
      if (c == 0) continue;
      ZTuple t;
      t.u = d.u;
      t.v = d.v;
      t.w = static_cast<int>(w) + 1;
      t.sgn = c;
      t.rhs = -abs(c);
      t.aux.assign(n, c);
      t.pre = d.z;
      t.D.resize(n);
      t.E.resize(n);
      t.Fc.resize(n);
      for (size_t z = 0; z < n; ++z) {
        CutCoefficients s = cut_coefficients(t.pre[z], c);
        t.D[z] = std::move(s.D);
        t.E[z] = std::move(s.E);
        t.Fc[z] = std::move(s.F);
      }
      out.tuples.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<ZParams> compute_z_tables_parallel(const std::vector<PiecewiseGrid>& grids,
                                               unsigned threads) {
  std::vector<ZParams> out(grids.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(grids.size(), 1)));
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(grids.size());
  auto worker = [&] {
    for (size_t i = next++; i < grids.size(); i = next++) {
      try {
        out[i] = compute_z_tables(grids[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace gasmip
