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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "gasmip/lp.hpp"

namespace gasmip {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
    case LpStatus::kNumericalError:
      return "numerical_error";
  }
  return "?";
}

LpProblem to_lp_problem(const MipModel& model) {
  LpProblem lp;
  lp.num_rows = static_cast<int>(model.constraints().size());
  lp.num_cols = model.num_variables();
  lp.columns.resize(static_cast<size_t>(lp.num_cols));
  for (int i = 0; i < lp.num_rows; ++i) {
    const LinearConstraint& row = model.constraints()[static_cast<size_t>(i)];
    for (const Term& t : row.terms) {
      lp.columns[static_cast<size_t>(t.var.value)].push_back({i, ToDouble(t.coef)});
    }
    const double rhs = ToDouble(row.rhs);
    lp.row_lower.push_back(row.sense == Sense::kLessEqual ? -kInf : rhs);
    lp.row_upper.push_back(row.sense == Sense::kGreaterEqual ? kInf : rhs);
  }
  for (const Variable& v : model.variables()) {
    lp.col_lower.push_back(v.lower ? ToDouble(*v.lower) : -kInf);
    lp.col_upper.push_back(v.upper ? ToDouble(*v.upper) : kInf);
  }
  lp.cost.assign(static_cast<size_t>(lp.num_cols), 0.0);
  for (const Term& t : model.objective().terms) {
    lp.cost[static_cast<size_t>(t.var.value)] = ToDouble(t.coef);
  }
  lp.cost_constant = ToDouble(model.objective().constant);
  return lp;
}

double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  std::vector<double> act(static_cast<size_t>(p.num_rows), 0.0);
  for (int j = 0; j < p.num_cols; ++j) {
    const double v = x[static_cast<size_t>(j)];
    worst = std::max({worst, p.col_lower[static_cast<size_t>(j)] - v, v - p.col_upper[static_cast<size_t>(j)]});
    for (const LpColumnEntry& e : p.columns[static_cast<size_t>(j)]) act[static_cast<size_t>(e.row)] += e.value * v;
  }
  for (int i = 0; i < p.num_rows; ++i) {
    const size_t k = static_cast<size_t>(i);
    worst = std::max({worst, p.row_lower[k] - act[k], act[k] - p.row_upper[k]});
  }
  return worst;
}

namespace {

using At = LpBasis::At;

double PowerOfTwo(double x) { return std::exp2(std::round(std::log2(x))); }

class Simplex {
 public:
  Simplex(const LpProblem& p, const LpOptions& o) : p_(p), opt_(o) {
    m_ = p.num_rows;
    n_ = p.num_cols;
    total_ = n_ + m_;
    row_scale_.assign(static_cast<size_t>(m_), 1.0);
    col_scale_.assign(static_cast<size_t>(n_), 1.0);
    if (opt_.scale) ComputeScaling();
    cols_.resize(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      for (const LpColumnEntry& e : p.columns[static_cast<size_t>(j)]) {
        if (e.value == 0.0) continue;
        cols_[static_cast<size_t>(j)].push_back(
            {e.row, e.value * row_scale_[static_cast<size_t>(e.row)] * col_scale_[static_cast<size_t>(j)]});
      }
    }
    lb_.resize(static_cast<size_t>(total_));
    ub_.resize(static_cast<size_t>(total_));
    cost_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < n_; ++j) {
      const size_t k = static_cast<size_t>(j);
      lb_[k] = p.col_lower[k] / col_scale_[k];
      ub_[k] = p.col_upper[k] / col_scale_[k];
      cost_[k] = p.cost[k] * col_scale_[k];
    }
    for (double c : cost_) cost_norm_ = std::max(cost_norm_, std::fabs(c));
    for (int i = 0; i < m_; ++i) {
      const size_t k = static_cast<size_t>(i);
      lb_[static_cast<size_t>(n_ + i)] = p.row_lower[k] * row_scale_[k];
      ub_[static_cast<size_t>(n_ + i)] = p.row_upper[k] * row_scale_[k];
    }
  }

  LpSolution Run(const LpBasis* warm) {
    LpSolution sol;
    for (int j = 0; j < total_; ++j) {
      if (lb_[static_cast<size_t>(j)] > ub_[static_cast<size_t>(j)] + Tol(j)) {
        sol.status = LpStatus::kInfeasible;
        return sol;
      }
    }
    Initialize(warm);
    start_ = std::chrono::steady_clock::now();
    LpStatus status = Iterate(sol.iterations);
    if (perturbed_) {
      // Restore the original bounds and clean up from the current basis.
      RemovePerturbation();
      if (status == LpStatus::kOptimal || status == LpStatus::kInfeasible) status = Iterate(sol.iterations);
    }
    sol.status = status;
    Extract(sol);
    return sol;
  }

 private:
  // Widens every non-fixed finite bound by a small pseudo-random amount so
  // that degenerate vertices split apart.
  void Perturb() {
    perturbed_ = true;
    orig_lb_ = lb_;
    orig_ub_ = ub_;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(0.5, 1.0);
    for (int j = 0; j < total_; ++j) {
      const size_t k = static_cast<size_t>(j);
      if (lb_[k] == ub_[k]) continue;
      const double base = 1e-7;
      if (std::isfinite(lb_[k])) lb_[k] -= base * unit(rng) * std::max(1.0, std::fabs(lb_[k]));
      if (std::isfinite(ub_[k])) ub_[k] += base * unit(rng) * std::max(1.0, std::fabs(ub_[k]));
      if (status_[k] == At::kLower) x_[k] = lb_[k];
      if (status_[k] == At::kUpper) x_[k] = ub_[k];
    }
    ComputeBasics();
  }

  void RemovePerturbation() {
    perturbed_ = false;
    lb_ = orig_lb_;
    ub_ = orig_ub_;
    for (int j = 0; j < total_; ++j) {
      const size_t k = static_cast<size_t>(j);
      if (status_[k] == At::kLower) x_[k] = lb_[k];
      if (status_[k] == At::kUpper) x_[k] = ub_[k];
    }
    if (!Refactor()) {
      ColdStart();
      Refactor();
    }
    ComputeBasics();
  }

  bool OutOfTime() const {
    return std::isfinite(opt_.time_limit) &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > opt_.time_limit;
  }

  double Tol(int j) const {
    const size_t k = static_cast<size_t>(j);
    double mag = 1.0;
    if (std::isfinite(lb_[k])) mag = std::max(mag, std::fabs(lb_[k]));
    if (std::isfinite(ub_[k])) mag = std::max(mag, std::fabs(ub_[k]));
    return opt_.feasibility_tol * mag;
  }

  void ComputeScaling() {
    for (int pass = 0; pass < 6; ++pass) {
      std::vector<double> rmin(static_cast<size_t>(m_), kInf), rmax(static_cast<size_t>(m_), 0.0);
      for (int j = 0; j < n_; ++j) {
        for (const LpColumnEntry& e : p_.columns[static_cast<size_t>(j)]) {
          const double v = std::fabs(e.value) * col_scale_[static_cast<size_t>(j)];
          if (v == 0.0) continue;
          rmin[static_cast<size_t>(e.row)] = std::min(rmin[static_cast<size_t>(e.row)], v);
          rmax[static_cast<size_t>(e.row)] = std::max(rmax[static_cast<size_t>(e.row)], v);
        }
      }
      for (int i = 0; i < m_; ++i) {
        const size_t k = static_cast<size_t>(i);
        if (rmax[k] > 0.0) row_scale_[k] = PowerOfTwo(1.0 / std::sqrt(rmin[k] * rmax[k]));
      }
      for (int j = 0; j < n_; ++j) {
        double cmin = kInf;
        double cmax = 0.0;
        for (const LpColumnEntry& e : p_.columns[static_cast<size_t>(j)]) {
          const double v = std::fabs(e.value) * row_scale_[static_cast<size_t>(e.row)];
          if (v == 0.0) continue;
          cmin = std::min(cmin, v);
          cmax = std::max(cmax, v);
        }
        if (cmax > 0.0) col_scale_[static_cast<size_t>(j)] = PowerOfTwo(1.0 / std::sqrt(cmin * cmax));
      }
    }
  }

  // y . a_j over the full column set (slack of row i is -e_i).
  double ColDot(const std::vector<double>& y, int j) const {
    if (j >= n_) return -y[static_cast<size_t>(j - n_)];
    double s = 0.0;
    for (const LpColumnEntry& e : cols_[static_cast<size_t>(j)]) s += y[static_cast<size_t>(e.row)] * e.value;
    return s;
  }

  void Ftran(int j, std::vector<double>& alpha) const {
    alpha.assign(static_cast<size_t>(m_), 0.0);
    const size_t m = static_cast<size_t>(m_);
    if (j >= n_) {
      const size_t k = static_cast<size_t>(j - n_);
      for (size_t i = 0; i < m; ++i) alpha[i] = -binv_[i * m + k];
      return;
    }
    for (const LpColumnEntry& e : cols_[static_cast<size_t>(j)]) {
      const size_t k = static_cast<size_t>(e.row);
      for (size_t i = 0; i < m; ++i) alpha[i] += binv_[i * m + k] * e.value;
    }
  }

  void SetNonbasicAtBound(int j) {
    const size_t k = static_cast<size_t>(j);
    if (std::isfinite(lb_[k])) {
      status_[k] = At::kLower;
      x_[k] = lb_[k];
    } else if (std::isfinite(ub_[k])) {
      status_[k] = At::kUpper;
      x_[k] = ub_[k];
    } else {
      status_[k] = At::kZero;
      x_[k] = 0.0;
    }
  }

  void ColdStart() {
    head_.resize(static_cast<size_t>(m_));
    status_.assign(static_cast<size_t>(total_), At::kLower);
    x_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < n_; ++j) SetNonbasicAtBound(j);
    for (int i = 0; i < m_; ++i) {
      head_[static_cast<size_t>(i)] = n_ + i;
      status_[static_cast<size_t>(n_ + i)] = At::kBasic;
    }
  }

  void Initialize(const LpBasis* warm) {
    bool ok = false;
    if (warm && static_cast<int>(warm->columns.size()) == n_ && static_cast<int>(warm->rows.size()) == m_) {
      status_.assign(static_cast<size_t>(total_), At::kLower);
      x_.assign(static_cast<size_t>(total_), 0.0);
      head_.clear();
      for (int j = 0; j < total_; ++j) {
        const At s = j < n_ ? warm->columns[static_cast<size_t>(j)] : warm->rows[static_cast<size_t>(j - n_)];
        const size_t k = static_cast<size_t>(j);
        if (s == At::kBasic) {
          head_.push_back(j);
          status_[k] = At::kBasic;
        } else if (s == At::kUpper && std::isfinite(ub_[k])) {
          status_[k] = At::kUpper;
          x_[k] = ub_[k];
        } else if (s == At::kLower && std::isfinite(lb_[k])) {
          status_[k] = At::kLower;
          x_[k] = lb_[k];
        } else {
          SetNonbasicAtBound(j);
        }
      }
      ok = static_cast<int>(head_.size()) == m_ && Refactor();
    }
    if (!ok) {
      ColdStart();
      Refactor();
    }
    ComputeBasics();
  }

  // Dense Gauss-Jordan inverse of the basis matrix; false if singular.
  bool Refactor() {
    const size_t m = static_cast<size_t>(m_);
    std::vector<double> b(m * m, 0.0);
    for (size_t c = 0; c < m; ++c) {
      const int j = head_[c];
      if (j >= n_) {
        b[static_cast<size_t>(j - n_) * m + c] = -1.0;
      } else {
        for (const LpColumnEntry& e : cols_[static_cast<size_t>(j)]) b[static_cast<size_t>(e.row) * m + c] = e.value;
      }
    }
    binv_.assign(m * m, 0.0);
    for (size_t i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
    std::vector<size_t> nz_b, nz_inv;
    for (size_t col = 0; col < m; ++col) {
      size_t piv = col;
      double best = std::fabs(b[col * m + col]);
      for (size_t r = col + 1; r < m; ++r) {
        const double v = std::fabs(b[r * m + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-11) return false;
      if (piv != col) {
        std::swap_ranges(b.begin() + static_cast<std::ptrdiff_t>(piv * m), b.begin() + static_cast<std::ptrdiff_t>(piv * m + m),
                         b.begin() + static_cast<std::ptrdiff_t>(col * m));
        std::swap_ranges(binv_.begin() + static_cast<std::ptrdiff_t>(piv * m),
                         binv_.begin() + static_cast<std::ptrdiff_t>(piv * m + m),
                         binv_.begin() + static_cast<std::ptrdiff_t>(col * m));
      }
      const double inv = 1.0 / b[col * m + col];
      // Row operations touch only the nonzeros of the pivot row.
      nz_b.clear();
      nz_inv.clear();
      for (size_t c = col; c < m; ++c) {
        b[col * m + c] *= inv;
        if (b[col * m + c] != 0.0 && c != col) nz_b.push_back(c);
      }
      for (size_t c = 0; c < m; ++c) {
        binv_[col * m + c] *= inv;
        if (binv_[col * m + c] != 0.0) nz_inv.push_back(c);
      }
      b[col * m + col] = 1.0;
      for (size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = b[r * m + col];
        if (f == 0.0) continue;
        b[r * m + col] = 0.0;
        for (size_t c : nz_b) b[r * m + c] -= f * b[col * m + c];
        for (size_t c : nz_inv) binv_[r * m + c] -= f * binv_[col * m + c];
      }
    }
    since_refactor_ = 0;
    return true;
  }

  void ComputeBasics() {
    const size_t m = static_cast<size_t>(m_);
    std::vector<double> r(m, 0.0);
    for (int j = 0; j < total_; ++j) {
      const size_t k = static_cast<size_t>(j);
      if (status_[k] == At::kBasic || x_[k] == 0.0) continue;
      if (j >= n_) {
        r[static_cast<size_t>(j - n_)] -= x_[k];
      } else {
        for (const LpColumnEntry& e : cols_[k]) r[static_cast<size_t>(e.row)] += e.value * x_[k];
      }
    }
    for (size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (size_t c = 0; c < m; ++c) s += binv_[i * m + c] * r[c];
      x_[static_cast<size_t>(head_[i])] = -s;
    }
  }

  LpStatus Iterate(int64_t& iterations) {
    const size_t m = static_cast<size_t>(m_);
    std::vector<double> cb(m), y(m), alpha;
    int degenerate = 0;
    bool bland = false;
    bool verified = false;
    while (true) {
      if (iterations >= opt_.iteration_limit) return LpStatus::kIterationLimit;
      if (iterations % 64 == 0 && OutOfTime()) return LpStatus::kIterationLimit;
      if (since_refactor_ >= opt_.refactor_interval) {
        if (!Refactor()) {
          ColdStart();
          if (!Refactor()) return LpStatus::kNumericalError;
        }
        ComputeBasics();
      }
      bool phase1 = false;
      for (size_t i = 0; i < m; ++i) {
        const int j = head_[i];
        const size_t k = static_cast<size_t>(j);
        const double t = Tol(j);
        if (x_[k] < lb_[k] - t) {
          cb[i] = -1.0;
          phase1 = true;
        } else if (x_[k] > ub_[k] + t) {
          cb[i] = 1.0;
          phase1 = true;
        } else {
          cb[i] = 0.0;
        }
      }
      if (!phase1) {
        for (size_t i = 0; i < m; ++i) cb[i] = cost_[static_cast<size_t>(head_[i])];
      }
      std::fill(y.begin(), y.end(), 0.0);
      for (size_t i = 0; i < m; ++i) {
        if (cb[i] == 0.0) continue;
        const double* row = &binv_[i * m];
        for (size_t c = 0; c < m; ++c) y[c] += cb[i] * row[c];
      }
      // Pricing, with the tolerance relative to the largest cost in phase 2.
      const double dtol = phase1 ? opt_.optimality_tol : opt_.optimality_tol * cost_norm_;
      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        const size_t k = static_cast<size_t>(j);
        if (status_[k] == At::kBasic) continue;
        if (lb_[k] == ub_[k]) continue;
        const double d = (phase1 ? 0.0 : cost_[k]) - ColDot(y, j);
        int jd = 0;
        if (status_[k] == At::kLower && d < -dtol) jd = 1;
        else if (status_[k] == At::kUpper && d > dtol) jd = -1;
        else if (status_[k] == At::kZero && std::fabs(d) > dtol) jd = d < 0 ? 1 : -1;
        if (jd == 0) continue;
        if (bland) {
          enter = j;
          dir = jd;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          dir = jd;
        }
      }
      if (enter < 0) {
        if (!verified && since_refactor_ > 0) {
          // Recompute from a fresh factorization before declaring a result.
          verified = true;
          if (!Refactor()) return LpStatus::kNumericalError;
          ComputeBasics();
          continue;
        }
        return phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
      }
      verified = false;
      Ftran(enter, alpha);
      // Ratio test.
      const size_t q = static_cast<size_t>(enter);
      double theta = kInf;
      int leave = -1;
      bool leave_to_upper = false;
      if (std::isfinite(lb_[q]) && std::isfinite(ub_[q])) theta = ub_[q] - lb_[q];
      double best_pivot = 0.0;
      for (size_t i = 0; i < m; ++i) {
        const double rate = -dir * alpha[i];
        if (std::fabs(rate) < opt_.pivot_tol) continue;
        const int j = head_[i];
        const size_t k = static_cast<size_t>(j);
        const double t = Tol(j);
        const bool below = x_[k] < lb_[k] - t;
        const bool above = x_[k] > ub_[k] + t;
        double bound;
        bool to_upper;
        if (rate < 0) {
          if (below) continue;
          bound = above ? ub_[k] : lb_[k];
          to_upper = above;
        } else {
          if (above) continue;
          bound = below ? lb_[k] : ub_[k];
          to_upper = !below;
        }
        if (!std::isfinite(bound)) continue;
        const double ratio = std::max(0.0, (bound - x_[k]) / rate);
        const bool better = ratio < theta - 1e-12 ||
                            (ratio <= theta + 1e-12 && leave >= 0 &&
                             (bland ? head_[i] < head_[static_cast<size_t>(leave)]
                                    : std::fabs(alpha[i]) > best_pivot));
        if (better || (leave < 0 && ratio <= theta)) {
          theta = ratio;
          leave = static_cast<int>(i);
          leave_to_upper = to_upper;
          best_pivot = std::fabs(alpha[i]);
        }
      }
      if (!std::isfinite(theta)) {
        return phase1 ? LpStatus::kNumericalError : LpStatus::kUnbounded;
      }
      ++iterations;
      ++since_refactor_;
      if (theta < 1e-12) {
        ++degenerate;
        if (degenerate > 50 && !perturbed_ && !ever_perturbed_) {
          ever_perturbed_ = true;
          degenerate = 0;
          Perturb();
          continue;
        }
        if (degenerate > 50) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      x_[q] += dir * theta;
      for (size_t i = 0; i < m; ++i) x_[static_cast<size_t>(head_[i])] += -dir * alpha[i] * theta;
      if (leave < 0) {
        // Bound flip of the entering variable.
        status_[q] = dir > 0 ? At::kUpper : At::kLower;
        x_[q] = dir > 0 ? ub_[q] : lb_[q];
        continue;
      }
      const size_t r = static_cast<size_t>(leave);
      const int out = head_[r];
      const size_t ko = static_cast<size_t>(out);
      status_[ko] = leave_to_upper ? At::kUpper : At::kLower;
      x_[ko] = leave_to_upper ? ub_[ko] : lb_[ko];
      head_[r] = enter;
      status_[q] = At::kBasic;
      const double piv = alpha[r];
      double* prow = &binv_[r * m];
      for (size_t c = 0; c < m; ++c) prow[c] /= piv;
      for (size_t i = 0; i < m; ++i) {
        if (i == r || alpha[i] == 0.0) continue;
        const double f = alpha[i];
        double* row = &binv_[i * m];
        for (size_t c = 0; c < m; ++c) row[c] -= f * prow[c];
      }
    }
  }

  void Extract(LpSolution& sol) {
    const size_t m = static_cast<size_t>(m_);
    sol.x.assign(static_cast<size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) sol.x[static_cast<size_t>(j)] = x_[static_cast<size_t>(j)] * col_scale_[static_cast<size_t>(j)];
    sol.objective = p_.cost_constant;
    for (int j = 0; j < n_; ++j) sol.objective += p_.cost[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
    std::vector<double> y(m, 0.0);
    for (size_t i = 0; i < m; ++i) {
      const double c = cost_[static_cast<size_t>(head_[i])];
      if (c == 0.0) continue;
      for (size_t k = 0; k < m; ++k) y[k] += c * binv_[i * m + k];
    }
    sol.duals.resize(m);
    for (size_t i = 0; i < m; ++i) sol.duals[i] = y[i] * row_scale_[i];
    sol.reduced_costs.resize(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      const size_t k = static_cast<size_t>(j);
      sol.reduced_costs[k] = (cost_[k] - ColDot(y, j)) / col_scale_[k];
    }
    sol.basis.columns.assign(status_.begin(), status_.begin() + n_);
    sol.basis.rows.assign(status_.begin() + n_, status_.end());
  }

  const LpProblem& p_;
  LpOptions opt_;
  int m_ = 0, n_ = 0, total_ = 0;
  std::vector<double> row_scale_, col_scale_;
  std::vector<std::vector<LpColumnEntry>> cols_;
  std::vector<double> lb_, ub_, cost_, x_;
  std::vector<At> status_;
  std::vector<int> head_;
  std::vector<double> binv_;
  int since_refactor_ = 0;
  double cost_norm_ = 1.0;
  bool perturbed_ = false;
  bool ever_perturbed_ = false;
  std::vector<double> orig_lb_, orig_ub_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options, const LpBasis* warm_start) {
  Simplex simplex(problem, options);
  return simplex.Run(warm_start);
}

LpSolution solve_lp(const MipModel& model, const LpOptions& options) {
  return solve_lp(to_lp_problem(model), options);
}

}  // namespace gasmip
