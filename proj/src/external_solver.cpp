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

#include "gasmip/external_solver.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "gasmip/mps.hpp"

#ifndef GASMIP_SOURCE_DIR
#define GASMIP_SOURCE_DIR "."
#endif

namespace gasmip {
namespace fs = std::filesystem;

namespace {

std::string Replace(std::string s, const std::string& key, const std::string& value) {
  for (size_t pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size())) {
    s.replace(pos, key.size(), value);
  }
  return s;
}

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string FirstToken(const std::string& command) {
  std::istringstream in(command);
  std::string tok;
  in >> tok;
  if (tok.size() >= 2 && (tok.front() == '\'' || tok.front() == '"') && tok.back() == tok.front()) {
    tok = tok.substr(1, tok.size() - 2);
  }
  return tok;
}

bool IsExecutable(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

bool ResolveExecutable(const std::string& name) {
  if (name.empty()) return false;
  if (name.find('/') != std::string::npos) return IsExecutable(name);
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (!dir.empty() && IsExecutable(fs::path(dir) / name)) return true;
  }
  return false;
}

std::string FormatDouble(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

double ParseNumber(const std::string& s, int line) {
  if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
  if (s == "-inf" || s == "-Infinity") return -kInf;
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ExternalSolverError("solution line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string external_command_from_env() {
  const char* v = std::getenv(kExternalSolverEnv);
  return v == nullptr ? std::string() : std::string(v);
}

std::string default_external_command() {
  return "python3 " + Quote(std::string(GASMIP_SOURCE_DIR) + "/tools/highs_runner.py") +
         " {mps} {sol} --time-limit {time_limit} --gap {gap}";
}

MipSolution parse_external_solution(const std::string& text, const std::vector<std::string>& column_names) {
  std::unordered_map<std::string, size_t> index;
  for (size_t j = 0; j < column_names.size(); ++j) index.emplace(column_names[j], j);
  MipSolution out;
  out.status = MipStatus::kError;
  std::vector<bool> seen(column_names.size(), false);
  size_t n_seen = 0;
  bool have_status = false;
  bool have_bound = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key)) continue;
    if (!(ls >> value) || (ls >> extra)) {
      throw ExternalSolverError("solution line " + std::to_string(line_no) + ": expected '<key> <value>'");
    }
    if (key == "status") {
      have_status = true;
      if (value == "optimal") {
        out.status = MipStatus::kOptimal;
      } else if (value == "infeasible") {
        out.status = MipStatus::kInfeasible;
      } else if (value == "unbounded") {
        out.status = MipStatus::kUnbounded;
      } else if (value == "limit") {
        out.status = MipStatus::kLimit;
      } else if (value == "error") {
        out.status = MipStatus::kError;
      } else {
        throw ExternalSolverError("solution line " + std::to_string(line_no) + ": unknown status '" + value + "'");
      }
    } else if (key == "objective") {
      out.objective = ParseNumber(value, line_no);
    } else if (key == "bound") {
      out.best_bound = ParseNumber(value, line_no);
      have_bound = true;
    } else if (key == "nodes") {
      out.nodes = static_cast<int64_t>(ParseNumber(value, line_no));
    } else {
      auto it = index.find(key);
      if (it == index.end()) {
        throw ExternalSolverError("solution line " + std::to_string(line_no) + ": unknown column '" + key + "'");
      }
      if (out.x.empty()) out.x.assign(column_names.size(), 0.0);
      out.x[it->second] = ParseNumber(value, line_no);
      if (!seen[it->second]) ++n_seen;
      seen[it->second] = true;
    }
  }
  if (!have_status) throw ExternalSolverError("solution file has no status line");
  if (n_seen > 0 && n_seen != column_names.size()) {
    throw ExternalSolverError("solution file lists " + std::to_string(n_seen) + " of " +
                              std::to_string(column_names.size()) + " columns");
  }
  out.has_incumbent = n_seen == column_names.size() && !column_names.empty() &&
                      (out.status == MipStatus::kOptimal || out.status == MipStatus::kLimit);
  if (!have_bound) out.best_bound = out.objective;
  if (out.has_incumbent) out.gap = relative_gap(out.objective, out.best_bound);
  return out;
}

MipSolution solve_external(const MipModel& model, const ExternalSolverConfig& config) {
  if (config.command.empty()) {
    throw ExternalSolverError(std::string("no external solver configured; set ") + kExternalSolverEnv);
  }
  const std::string exe = FirstToken(config.command);
  if (!ResolveExecutable(exe)) throw ExternalSolverError("external solver executable not found: '" + exe + "'");

  static std::atomic<int> counter{0};
  fs::path dir = config.work_dir.empty() ? fs::temp_directory_path() / ("gasmip_ext_" + std::to_string(::getpid()) +
                                                                          "_" + std::to_string(counter++))
                                         : fs::path(config.work_dir);
  fs::create_directories(dir);
  const fs::path mps_path = dir / "model.mps";
  const fs::path sol_path = dir / "model.sol";
  const fs::path log_path = dir / "solver.log";
  fs::remove(sol_path);
  const MpsExport mps = export_mps(model);
  {
    std::ofstream f(mps_path);
    f << mps.text;
    if (!f) throw ExternalSolverError("cannot write " + mps_path.string());
  }
  std::string cmd = config.command;
  cmd = Replace(cmd, "{mps}", Quote(mps_path.string()));
  cmd = Replace(cmd, "{sol}", Quote(sol_path.string()));
  cmd = Replace(cmd, "{time_limit}", FormatDouble(config.time_limit));
  cmd = Replace(cmd, "{gap}", FormatDouble(config.rel_gap));
  cmd += " > " + Quote(log_path.string()) + " 2>&1";

  const auto t0 = std::chrono::steady_clock::now();
  const int rc = std::system(cmd.c_str());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto cleanup = [&] {
    if (!config.keep_files && config.work_dir.empty()) {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  };
  if (rc != 0) {
    std::ifstream lf(log_path);
    std::stringstream tail;
    tail << lf.rdbuf();
    std::string log = tail.str();
    if (log.size() > 2000) log = log.substr(log.size() - 2000);
    cleanup();
    throw ExternalSolverError("external solver exited with status " + std::to_string(rc) + ": " + log);
  }
  std::ifstream sf(sol_path);
  if (!sf) {
    cleanup();
    throw ExternalSolverError("external solver wrote no solution file");
  }
  std::stringstream ss;
  ss << sf.rdbuf();
  MipSolution sol;
  try {
    sol = parse_external_solution(ss.str(), mps.column_names);
  } catch (...) {
    cleanup();
    throw;
  }
  cleanup();
  sol.wall_time = wall;
  return sol;
}

}  // namespace gasmip
