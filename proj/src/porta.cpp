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

#include <cctype>
#include <sstream>

#include "gasmip/polytope.hpp"

namespace gasmip {
namespace {

void WriteRow(std::ostringstream& out, size_t number, const HRow& row, const char* rel) {
  out << '(' << (number < 10 ? "  " : number < 100 ? " " : "") << number << ") ";
  bool first = true;
  for (size_t i = 0; i < row.a.size(); ++i) {
    const Rational& c = row.a[i];
    if (c == 0) continue;
    if (c > 0 && !first) out << '+';
    if (c == -1) {
      out << '-';
    } else if (c != 1) {
      out << ToFractionString(c);
    }
    out << 'x' << (i + 1);
    first = false;
  }
  if (first) out << '0';
  out << ' ' << rel << ' ' << ToFractionString(row.b) << '\n';
}

std::string Strip(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Parses "2x1-3/4x3+x5" into coefficients; a bare number is a constant.
void ParseSide(const std::string& text, size_t dim, std::vector<Rational>& coefs, Rational& constant,
               size_t line_no) {
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw PolytopeError("ieq line " + std::to_string(line_no) + ": " + msg);
  };
  bool any = false;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    } else if (any) {
      fail("missing operator between terms");
    }
    size_t j = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
    Rational coef = 1;
    const bool has_number = j > i;
    if (has_number) {
      try {
        coef = ParseRational(text.substr(i, j - i));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    i = j;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == 'x') {
      ++i;
      size_t k = i;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      if (k == i) fail("variable index expected after 'x'");
      const size_t idx = std::stoul(text.substr(i, k - i));
      if (idx < 1 || idx > dim) fail("variable x" + std::to_string(idx) + " outside DIM");
      coefs[idx - 1] += sign * coef;
      i = k;
    } else {
      if (!has_number) fail("term expected");
      constant += sign * coef;
    }
    any = true;
  }
  if (!any) fail("empty side");
}

}  // namespace

std::string write_porta_ieq(const HPolyhedron& h) {
  h.validate();
  std::ostringstream out;
  out << "DIM = " << h.dim << "\n\n";
  out << "INEQUALITIES_SECTION\n";
  size_t k = 1;
  for (const HRow& r : h.equalities) WriteRow(out, k++, r, "==");
  for (const HRow& r : h.inequalities) WriteRow(out, k++, r, "<=");
  out << "\nEND\n";
  return out.str();
}

HPolyhedron read_porta_ieq(const std::string& text) {
  HPolyhedron h;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  bool have_dim = false;
  enum class Section { kNone, kIneq, kSkip } section = Section::kNone;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Strip(line);
    if (line.empty()) continue;
    if (line.rfind("DIM", 0) == 0) {
      const auto eqpos = line.find('=');
      if (eqpos == std::string::npos) throw PolytopeError("ieq line " + std::to_string(line_no) + ": bad DIM");
      h.dim = std::stoul(Strip(line.substr(eqpos + 1)));
      have_dim = true;
      continue;
    }
    if (line == "INEQUALITIES_SECTION") {
      if (!have_dim) throw PolytopeError("ieq: INEQUALITIES_SECTION before DIM");
      section = Section::kIneq;
      continue;
    }
    if (line == "END") break;
    if (std::isupper(static_cast<unsigned char>(line[0])) && line.find('_') != std::string::npos) {
      section = Section::kSkip;  // VALID, LOWER_BOUNDS, ELIMINATION_ORDER, ...
      continue;
    }
    if (section != Section::kIneq) continue;
    if (line[0] == '(') {
      const auto close = line.find(')');
      if (close == std::string::npos) throw PolytopeError("ieq line " + std::to_string(line_no) + ": unclosed '('");
      line = Strip(line.substr(close + 1));
    }
    std::string rel;
    size_t at = std::string::npos;
    for (const char* cand : {"<=", ">=", "=="}) {
      const auto p = line.find(cand);
      if (p != std::string::npos) {
        rel = cand;
        at = p;
        break;
      }
    }
    if (rel.empty()) {
      const auto p = line.find('=');
      if (p == std::string::npos) throw PolytopeError("ieq line " + std::to_string(line_no) + ": no relation");
      rel = "=";
      at = p;
    }
    std::vector<Rational> lhs(h.dim, 0);
    std::vector<Rational> rhs(h.dim, 0);
    Rational lc = 0;
    Rational rc = 0;
    ParseSide(line.substr(0, at), h.dim, lhs, lc, line_no);
    ParseSide(line.substr(at + rel.size()), h.dim, rhs, rc, line_no);
    HRow row{std::vector<Rational>(h.dim), rc - lc};
    for (size_t i = 0; i < h.dim; ++i) row.a[i] = lhs[i] - rhs[i];
    if (rel == "<=") {
      h.inequalities.push_back(std::move(row));
    } else if (rel == ">=") {
      for (Rational& x : row.a) x = -x;
      row.b = -row.b;
      h.inequalities.push_back(std::move(row));
    } else {
      h.equalities.push_back(std::move(row));
    }
  }
  if (!have_dim) throw PolytopeError("ieq: missing DIM");
  return h;
}

std::string write_porta_poi(const VertexSet& v, size_t dim) {
  std::ostringstream out;
  out << "DIM = " << dim << "\n\nCONV_SECTION\n";
  size_t k = 1;
  for (const auto& x : v.points) {
    out << '(' << (k < 10 ? "  " : k < 100 ? " " : "") << k << ") ";
    for (size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << ToFractionString(x[i]);
    out << '\n';
    ++k;
  }
  out << "\nEND\n";
  return out.str();
}

}  // namespace gasmip
