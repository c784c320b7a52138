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

#include "gasmip/polytope.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>

namespace gasmip {
namespace {

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;
using Matrix = std::vector<RatVec>;

// Fixed-width bitset over processed cone rows.
class RowSet {
 public:
  RowSet() = default;
  explicit RowSet(size_t bits) : words_((bits + 63) / 64, 0) {}
  void set(size_t i) { words_[i / 64] |= uint64_t{1} << (i % 64); }
  bool test(size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  size_t count() const {
    size_t c = 0;
    for (uint64_t w : words_) c += static_cast<size_t>(std::popcount(w));
    return c;
  }
  RowSet operator&(const RowSet& o) const {
    RowSet r = *this;
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool subset_of(const RowSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<uint64_t> words_;
};

struct Ray {
  IntVec v;
  RowSet zero;
};

void MakePrimitive(IntVec& v) {
  Integer g = 0;
  for (const Integer& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (Integer& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

IntVec ToPrimitiveInts(const RatVec& r) {
  Integer l = 1;
  for (const Rational& x : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out;
  out.reserve(r.size());
  for (const Rational& x : r) out.push_back(x.get_num() * (l / x.get_den()));
  MakePrimitive(out);
  return out;
}

Integer Dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

// Reduced row echelon form in place; returns pivot columns. Only the first
// `ncols` columns are eligible as pivots.
std::vector<size_t> Rref(Matrix& m, size_t ncols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational piv = m[row][col];
    for (Rational& x : m[row]) x /= piv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (size_t c = 0; c < m[r].size(); ++c) {
        if (m[row][c] != 0) m[r][c] -= factor * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of the null space of the rows of `m` (each row has `n` entries).
std::vector<RatVec> NullSpace(Matrix m, size_t n) {
  const std::vector<size_t> pivots = Rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a square matrix (assumed regular).
Matrix Inverse(const Matrix& a) {
  const size_t n = a.size();
  Matrix aug(n, RatVec(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  const std::vector<size_t> pivots = Rref(aug, n);
  if (pivots.size() != n) throw PolytopeError("internal error: singular initial basis");
  Matrix inv(n, RatVec(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

std::string DescribeDirection(const HPolyhedron& h, const RatVec& d) {
  std::string out;
  int shown = 0;
  for (size_t i = 0; i < d.size() && shown < 6; ++i) {
    if (d[i] == 0) continue;
    const std::string name = i < h.names.size() ? h.names[i] : "x" + std::to_string(i + 1);
    out += (shown ? ", " : "") + name + "=" + ToFractionString(d[i]);
    ++shown;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

void HPolyhedron::validate() const {
  auto check = [&](const std::vector<HRow>& rows) {
    for (const HRow& r : rows) {
      if (r.a.size() != dim) throw PolytopeError("row length does not match dimension");
    }
  };
  check(inequalities);
  check(equalities);
  for (size_t c : binary_coords) {
    if (c >= dim) throw PolytopeError("binary coordinate index out of range");
  }
  if (!names.empty() && names.size() != dim) throw PolytopeError("name count does not match dimension");
}

HPolyhedron to_hpolyhedron(const MipModel& model, const std::vector<VarId>& extra_marked) {
  HPolyhedron h;
  h.dim = static_cast<size_t>(model.num_variables());
  for (const LinearConstraint& row : model.constraints()) {
    RatVec a(h.dim, 0);
    for (const Term& t : row.terms) a[static_cast<size_t>(t.var.value)] = t.coef;
    switch (row.sense) {
      case Sense::kLessEqual:
        h.add_le(std::move(a), row.rhs);
        break;
      case Sense::kGreaterEqual:
        for (Rational& x : a) x = -x;
        h.add_le(std::move(a), -row.rhs);
        break;
      case Sense::kEqual:
        h.add_eq(std::move(a), row.rhs);
        break;
    }
  }
  std::set<size_t> marked;
  for (size_t j = 0; j < h.dim; ++j) {
    const Variable& v = model.variables()[j];
    h.names.push_back(v.name);
    if (v.lower) {
      RatVec a(h.dim, 0);
      a[j] = -1;
      h.add_le(std::move(a), -*v.lower);
    }
    if (v.upper) {
      RatVec a(h.dim, 0);
      a[j] = 1;
      h.add_le(std::move(a), *v.upper);
    }
    if (v.kind == VarKind::kBinary) marked.insert(j);
  }
  for (VarId v : extra_marked) marked.insert(static_cast<size_t>(v.value));
  h.binary_coords.assign(marked.begin(), marked.end());
  return h;
}

bool satisfies(const HPolyhedron& h, const std::vector<Rational>& x) {
  auto lhs = [&](const HRow& r) {
    Rational s = 0;
    for (size_t i = 0; i < h.dim; ++i) {
      if (r.a[i] != 0) s += r.a[i] * x[i];
    }
    return s;
  };
  for (const HRow& r : h.inequalities) {
    if (lhs(r) > r.b) return false;
  }
  for (const HRow& r : h.equalities) {
    if (lhs(r) != r.b) return false;
  }
  return true;
}

VertexSet enumerate_vertices(const HPolyhedron& h, const EnumerationOptions& options,
                             EnumerationStats* stats) {
  h.validate();
  VertexSet result;
  const size_t n = h.dim;

  // Eliminate equalities: x = x0 + N y.
  Matrix eq;
  for (const HRow& r : h.equalities) {
    RatVec row = r.a;
    row.push_back(r.b);
    eq.push_back(std::move(row));
  }
  const std::vector<size_t> pivots = Rref(eq, n);
  for (size_t r = pivots.size(); r < eq.size(); ++r) {
    if (eq[r][n] != 0) return result;  // inconsistent equalities
  }
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  const size_t dy = free_cols.size();
  RatVec x0(n, 0);
  Matrix N(n, RatVec(dy, 0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    x0[pivots[r]] = eq[r][n];
    for (size_t k = 0; k < dy; ++k) N[pivots[r]][k] = -eq[r][free_cols[k]];
  }
  for (size_t k = 0; k < dy; ++k) N[free_cols[k]][k] = 1;

  // Inequalities in y; cone rows (h, -g) . (t, y) >= 0.
  const size_t D = dy + 1;
  std::vector<IntVec> rows;
  for (const HRow& r : h.inequalities) {
    RatVec cone(D, 0);
    Rational ax0 = 0;
    for (size_t i = 0; i < n; ++i) {
      if (r.a[i] != 0) ax0 += r.a[i] * x0[i];
    }
    cone[0] = r.b - ax0;
    bool any = false;
    for (size_t k = 0; k < dy; ++k) {
      Rational g = 0;
      for (size_t i = 0; i < n; ++i) {
        if (r.a[i] != 0 && N[i][k] != 0) g += r.a[i] * N[i][k];
      }
      cone[k + 1] = -g;
      if (g != 0) any = true;
    }
    if (!any) {
      if (cone[0] < 0) return result;  // 0 <= negative
      continue;
    }
    rows.push_back(ToPrimitiveInts(cone));
  }
  auto to_x = [&](const RatVec& y) {
    RatVec x = x0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < dy; ++k) {
        if (N[i][k] != 0 && y[k] != 0) x[i] += N[i][k] * y[k];
      }
    }
    return x;
  };
  auto direction_x = [&](const RatVec& dyv) {
    RatVec d(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < dy; ++k) {
        if (N[i][k] != 0 && dyv[k] != 0) d[i] += N[i][k] * dyv[k];
      }
    }
    return d;
  };
  if (stats) stats->reduced_dim = dy;
  if (dy == 0) {
    result.points.push_back(x0);
    result.fractional_counts.push_back(0);
    for (size_t c : h.binary_coords) {
      if (x0[c] != 0 && x0[c] != 1) ++result.fractional_counts.back();
    }
    return result;
  }
  {
    IntVec t_row(D, 0);
    t_row[0] = 1;
    rows.insert(rows.begin(), std::move(t_row));
  }

  // Make the cone pointed: lineality directions are forced to zero.
  std::vector<RatVec> lineality;
  {
    Matrix m;
    for (const IntVec& r : rows) m.emplace_back(r.begin(), r.end());
    lineality = NullSpace(m, D);
    for (const RatVec& l : lineality) {
      rows.push_back(ToPrimitiveInts(l));
      RatVec neg = l;
      for (Rational& x : neg) x = -x;
      rows.push_back(ToPrimitiveInts(neg));
    }
  }

  // Initial simplicial cone from the first D independent rows.
  std::vector<size_t> basis;
  {
    Matrix work;
    for (size_t i = 0; i < rows.size() && basis.size() < D; ++i) {
      Matrix trial = work;
      trial.emplace_back(rows[i].begin(), rows[i].end());
      if (Rref(trial, D).size() > basis.size()) {
        work.emplace_back(rows[i].begin(), rows[i].end());
        basis.push_back(i);
      }
    }
    if (basis.size() != D) throw PolytopeError("internal error: cone is not pointed");
  }
  // Row order: basis rows first (in their original order), then the rest.
  std::vector<size_t> order = basis;
  {
    std::vector<bool> in_basis(rows.size(), false);
    for (size_t b : basis) in_basis[b] = true;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!in_basis[i]) order.push_back(i);
    }
  }
  const size_t nrows = rows.size();
  std::vector<Ray> rays;
  {
    Matrix b;
    for (size_t i : basis) b.emplace_back(rows[i].begin(), rows[i].end());
    const Matrix inv = Inverse(b);
    for (size_t j = 0; j < D; ++j) {
      RatVec col(D);
      for (size_t i = 0; i < D; ++i) col[i] = inv[i][j];
      Ray ray{ToPrimitiveInts(col), RowSet(nrows)};
      for (size_t k = 0; k < D; ++k) {
        if (k != j) ray.zero.set(k);
      }
      rays.push_back(std::move(ray));
    }
  }

  // Insert remaining rows.
  size_t max_rays = rays.size();
  for (size_t pos_idx = D; pos_idx < order.size(); ++pos_idx) {
    const IntVec& a = rows[order[pos_idx]];
    std::vector<int> sign(rays.size());
    std::vector<Integer> value(rays.size());
    std::vector<size_t> pos;
    std::vector<size_t> neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      value[r] = Dot(a, rays[r].v);
      sign[r] = sgn(value[r]);
      if (sign[r] > 0) pos.push_back(r);
      if (sign[r] < 0) neg.push_back(r);
    }
    std::vector<Ray> next;
    if (!neg.empty()) {
      for (size_t p : pos) {
        for (size_t q : neg) {
          RowSet common = rays[p].zero & rays[q].zero;
          if (common.count() + 2 < D) continue;
          bool adjacent = true;
          for (size_t r = 0; r < rays.size(); ++r) {
            if (r == p || r == q) continue;
            if (common.subset_of(rays[r].zero)) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          IntVec v(D);
          for (size_t i = 0; i < D; ++i) v[i] = value[p] * rays[q].v[i] - value[q] * rays[p].v[i];
          MakePrimitive(v);
          common.set(pos_idx);
          next.push_back(Ray{std::move(v), std::move(common)});
          if (rays.size() + next.size() > options.ray_budget) {
            throw EnumerationBudgetExceeded("vertex enumeration exceeded the ray budget of " +
                                            std::to_string(options.ray_budget));
          }
        }
      }
    }
    for (size_t r = 0; r < rays.size(); ++r) {
      if (sign[r] == 0) rays[r].zero.set(pos_idx);
      if (sign[r] >= 0) next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
    max_rays = std::max(max_rays, rays.size());
  }
  if (stats) {
    stats->rows_processed = order.size();
    stats->max_rays = max_rays;
  }

  // Rays with t > 0 are vertices; t == 0 are recession directions.
  std::set<RatVec> seen;
  std::optional<RatVec> recession;
  for (const Ray& ray : rays) {
    if (sgn(ray.v[0]) > 0) {
      RatVec y(dy);
      for (size_t k = 0; k < dy; ++k) {
        y[k] = Rational(ray.v[k + 1], ray.v[0]);
        y[k].canonicalize();
      }
      RatVec x = to_x(y);
      seen.insert(std::move(x));
    } else if (!recession) {
      RatVec d(dy);
      for (size_t k = 0; k < dy; ++k) d[k] = Rational(ray.v[k + 1]);
      recession = direction_x(d);
    }
  }
  if (!seen.empty()) {
    if (!lineality.empty()) {
      RatVec d(dy);
      for (size_t k = 0; k < dy; ++k) d[k] = lineality.front()[k + 1];
      const RatVec dir = direction_x(d);
      throw UnboundedPolyhedron("polyhedron contains a line along " + DescribeDirection(h, dir), dir);
    }
    if (recession) {
      throw UnboundedPolyhedron("polyhedron is unbounded along " + DescribeDirection(h, *recession),
                                *recession);
    }
  }
  for (const RatVec& x : seen) {
    int frac = 0;
    for (size_t c : h.binary_coords) {
      if (x[c] != 0 && x[c] != 1) ++frac;
    }
    result.points.push_back(x);
    result.fractional_counts.push_back(frac);
  }
  return result;
}

FractionalStats fractional_stats(const VertexSet& v, const std::vector<size_t>& binary_coords) {
  FractionalStats s;
  s.n_vertices = v.points.size();
  size_t total = 0;
  for (const auto& x : v.points) {
    size_t frac = 0;
    for (size_t c : binary_coords) {
      if (c >= x.size()) throw PolytopeError("binary coordinate index out of range");
      if (x[c] != 0 && x[c] != 1) ++frac;
    }
    if (frac > 0) {
      ++s.n_fractional;
      total += frac;
    }
  }
  if (s.n_vertices > 0) s.pct_fractional = 100.0 * static_cast<double>(s.n_fractional) /
                                           static_cast<double>(s.n_vertices);
  if (s.n_fractional > 0) s.avg_fractional = static_cast<double>(total) /
                                             static_cast<double>(s.n_fractional);
  return s;
}

}  // namespace gasmip
