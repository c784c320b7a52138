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
#include <memory>
#include <queue>

#include "gasmip/mip.hpp"

namespace gasmip {

const char* ToString(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kInfeasible:
      return "infeasible";
    case MipStatus::kUnbounded:
      return "unbounded";
    case MipStatus::kLimit:
      return "limit";
    case MipStatus::kError:
      return "error";
  }
  return "?";
}

double relative_gap(double objective, double bound) {
  return std::fabs(objective - bound) / std::max(std::fabs(objective), 1e-10);
}

namespace {

struct BoundChange {
  int col;
  double lower;
  double upper;
};

struct Node {
  int64_t id = 0;
  int depth = 0;
  double bound = -kInf;
  std::vector<BoundChange> changes;  // full path from the root
  std::shared_ptr<const LpBasis> basis;
  // Pseudo-cost bookkeeping for the branching that created this node.
  int branched_col = -1;
  double branched_delta = 0.0;  // distance the variable was pushed
  bool branched_up = false;
  double parent_objective = 0.0;
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->id > b->id;
  }
};

struct SosView {
  std::vector<int> members;
  std::vector<double> weights;
};

// Returns the split position r (members after r go to 0 in the left child,
// members before r in the right child) or -1 if the group is satisfied.
int SosSplit(const SosView& g, const std::vector<double>& x, double tol) {
  int first = -1;
  int last = -1;
  double mass = 0.0;
  double weighted = 0.0;
  for (size_t i = 0; i < g.members.size(); ++i) {
    const double v = std::fabs(x[static_cast<size_t>(g.members[i])]);
    if (v > tol) {
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
    mass += v;
    weighted += v * g.weights[i];
  }
  if (first < 0 || last - first <= 1) return -1;
  const double mid = weighted / mass;
  int r = first + 1;
  for (size_t i = 0; i + 1 < g.members.size(); ++i) {
    if (g.weights[i] <= mid) r = static_cast<int>(i);
  }
  return std::clamp(r, first + 1, last - 1);
}

}  // namespace

bool is_mip_feasible_pattern(const MipModel& model, const std::vector<double>& x, double tol) {
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[static_cast<size_t>(j)].kind != VarKind::kBinary) continue;
    const double v = x[static_cast<size_t>(j)];
    if (std::fabs(v - std::round(v)) > tol) return false;
  }
  for (const Sos2Group& g : model.sos2_groups()) {
    SosView view;
    for (size_t i = 0; i < g.members.size(); ++i) {
      view.members.push_back(g.members[i].value);
      view.weights.push_back(ToDouble(g.weights[i]));
    }
    if (SosSplit(view, x, tol) >= 0) return false;
  }
  return true;
}

MipSolution solve_mip(const MipModel& model, const MipOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  MipSolution out;
  const LpProblem root = to_lp_problem(model);
  std::vector<int> binaries;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[static_cast<size_t>(j)].kind == VarKind::kBinary) binaries.push_back(j);
  }
  std::vector<SosView> groups;
  for (const Sos2Group& g : model.sos2_groups()) {
    SosView view;
    for (size_t i = 0; i < g.members.size(); ++i) {
      view.members.push_back(g.members[i].value);
      view.weights.push_back(ToDouble(g.weights[i]));
    }
    groups.push_back(std::move(view));
  }
  const size_t ncols = static_cast<size_t>(root.num_cols);
  std::vector<double> pc_up_sum(ncols, 0.0), pc_down_sum(ncols, 0.0);
  std::vector<int> pc_up_n(ncols, 0), pc_down_n(ncols, 0);

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;
  int64_t next_id = 0;
  {
    auto rootnode = std::make_shared<Node>();
    rootnode->id = next_id++;
    open.push(rootnode);
  }
  double incumbent = kInf;
  bool incomplete = false;
  int64_t numerical_trouble = 0;
  LpProblem work = root;

  double dropped_bound = kInf;  // bounds of nodes whose LP failed
  std::shared_ptr<Node> plunge;  // child processed next, ahead of the queue
  auto open_bound = [&] {
    double b = open.empty() ? incumbent : std::min(open.top()->bound, incumbent);
    if (plunge) b = std::min(b, plunge->bound);
    return std::min(b, dropped_bound);
  };

  while (!open.empty() || plunge) {
    if (out.nodes >= options.node_limit || elapsed() > options.time_limit) {
      incomplete = true;
      break;
    }
    if (std::isfinite(incumbent) && relative_gap(incumbent, open_bound()) <= options.rel_gap) {
      break;
    }
    std::shared_ptr<Node> node;
    if (plunge) {
      node = std::move(plunge);
    } else {
      node = open.top();
      open.pop();
    }
    if (node->bound >= incumbent - 1e-9 * std::max(1.0, std::fabs(incumbent))) continue;
    ++out.nodes;

    work.col_lower = root.col_lower;
    work.col_upper = root.col_upper;
    for (const BoundChange& c : node->changes) {
      work.col_lower[static_cast<size_t>(c.col)] = std::max(work.col_lower[static_cast<size_t>(c.col)], c.lower);
      work.col_upper[static_cast<size_t>(c.col)] = std::min(work.col_upper[static_cast<size_t>(c.col)], c.upper);
    }
    LpOptions lp_options = options.lp;
    lp_options.time_limit = std::min(lp_options.time_limit, std::max(0.0, options.time_limit - elapsed()));
    LpSolution lp = solve_lp(work, lp_options, node->basis.get());
    if (lp.status == LpStatus::kNumericalError ||
        (lp.status == LpStatus::kIterationLimit && elapsed() < options.time_limit)) {
      out.lp_iterations += lp.iterations;
      lp_options.time_limit = std::min(options.lp.time_limit, std::max(0.0, options.time_limit - elapsed()));
      lp = solve_lp(work, lp_options, nullptr);
    }
    out.lp_iterations += lp.iterations;
    if (lp.status == LpStatus::kUnbounded) {
      if (node->id == 0) {
        out.status = MipStatus::kUnbounded;
        out.wall_time = elapsed();
        out.message = "LP relaxation is unbounded";
        return out;
      }
      incomplete = true;
      dropped_bound = -kInf;
      continue;
    }
    if (lp.status == LpStatus::kInfeasible) continue;
    if (lp.status != LpStatus::kOptimal) {
      incomplete = true;
      dropped_bound = std::min(dropped_bound, node->bound);
      if (elapsed() < options.time_limit) ++numerical_trouble;
      continue;
    }
    if (node->branched_col >= 0 && node->branched_delta > 0) {
      const double gain = std::max(0.0, lp.objective - node->parent_objective) / node->branched_delta;
      const size_t k = static_cast<size_t>(node->branched_col);
      if (node->branched_up) {
        pc_up_sum[k] += gain;
        ++pc_up_n[k];
      } else {
        pc_down_sum[k] += gain;
        ++pc_down_n[k];
      }
    }
    if (lp.objective >= incumbent - 1e-9 * std::max(1.0, std::fabs(incumbent))) continue;

    // Branching candidate: most fractional binary.
    int branch_col = -1;
    double best_frac = 0.0;
    double best_score = -1.0;
    for (int j : binaries) {
      const double v = lp.x[static_cast<size_t>(j)];
      const double frac = v - std::floor(v);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist <= options.integrality_tol) continue;
      const size_t k = static_cast<size_t>(j);
      const double up = pc_up_n[k] ? pc_up_sum[k] / pc_up_n[k] : 1.0;
      const double down = pc_down_n[k] ? pc_down_sum[k] / pc_down_n[k] : 1.0;
      const double score = std::max(up * (1.0 - frac), 1e-6) * std::max(down * frac, 1e-6);
      if (dist > best_frac + 1e-9 || (dist > best_frac - 1e-9 && score > best_score)) {
        best_frac = std::max(best_frac, dist);
        best_score = score;
        branch_col = j;
      }
    }
    auto basis = std::make_shared<const LpBasis>(lp.basis);
    auto child = [&](std::vector<BoundChange> changes) {
      auto c = std::make_shared<Node>();
      c->id = next_id++;
      c->depth = node->depth + 1;
      c->bound = lp.objective;
      c->changes = std::move(changes);
      c->basis = basis;
      c->parent_objective = lp.objective;
      return c;
    };
    if (branch_col >= 0) {
      const double v = lp.x[static_cast<size_t>(branch_col)];
      auto down = node->changes;
      down.push_back({branch_col, -kInf, std::floor(v)});
      auto up = node->changes;
      up.push_back({branch_col, std::ceil(v), kInf});
      auto cd = child(std::move(down));
      cd->branched_col = branch_col;
      cd->branched_delta = v - std::floor(v);
      cd->branched_up = false;
      auto cu = child(std::move(up));
      cu->branched_col = branch_col;
      cu->branched_delta = std::ceil(v) - v;
      cu->branched_up = true;
      // Plunge into the child on the side the LP value leans to.
      if (v - std::floor(v) >= 0.5) {
        open.push(cd);
        plunge = cu;
      } else {
        open.push(cu);
        plunge = cd;
      }
    } else {
      int group = -1;
      int split = -1;
      for (size_t g = 0; g < groups.size(); ++g) {
        split = SosSplit(groups[g], lp.x, options.integrality_tol);
        if (split >= 0) {
          group = static_cast<int>(g);
          break;
        }
      }
      if (group < 0) {
        // Integral and SOS-feasible: new incumbent.
        if (lp.objective < incumbent) {
          incumbent = lp.objective;
          out.x = lp.x;
          out.has_incumbent = true;
        }
      } else {
        const SosView& g = groups[static_cast<size_t>(group)];
        auto left = node->changes;
        auto right = node->changes;
        for (size_t i = 0; i < g.members.size(); ++i) {
          if (static_cast<int>(i) > split) left.push_back({g.members[i], 0.0, 0.0});
          if (static_cast<int>(i) < split) right.push_back({g.members[i], 0.0, 0.0});
        }
        open.push(child(std::move(right)));
        plunge = child(std::move(left));
      }
    }
    if (options.record_trace) {
      out.trace.push_back({out.nodes, open_bound(), incumbent});
    }
  }

  out.wall_time = elapsed();
  out.best_bound = open_bound();
  if (numerical_trouble > 0) {
    out.message = std::to_string(numerical_trouble) + " node LPs failed and were dropped";
  }
  if (!out.has_incumbent) {
    out.status = incomplete ? MipStatus::kLimit : MipStatus::kInfeasible;
    out.best_bound = incomplete ? out.best_bound : kInf;
    return out;
  }
  out.objective = incumbent;
  out.gap = relative_gap(incumbent, out.best_bound);
  out.status = (incomplete && out.gap > options.rel_gap) ? MipStatus::kLimit : MipStatus::kOptimal;
  return out;
}

}  // namespace gasmip
