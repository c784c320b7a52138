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

#include "gasmip/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gasmip {
namespace {

Integer Pow10(unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace

Rational ParseRational(std::string_view raw) {
  const std::string text = Trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = ParseRational(text.substr(0, slash));
    const Rational den = ParseRational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational result = num / den;
    result.canonicalize();
    return result;
  }

  size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + text + "'");
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
    ++pos;
    size_t used = 0;
    try {
      exponent = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    if (pos + used != text.size()) throw std::invalid_argument("malformed number '" + text + "'");
  }

  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long scale = exponent - fraction_digits;
  Rational result;
  if (scale >= 0) {
    result = Rational(mantissa * Pow10(static_cast<unsigned long>(scale)));
  } else {
    result = Rational(mantissa, Pow10(static_cast<unsigned long>(-scale)));
  }
  result.canonicalize();
  return result;
}

std::string ToFractionString(const Rational& value) { return value.get_str(10); }

std::string ToDecimalString(const Rational& value) {
  Integer den = value.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value.get_d());
    return buffer;
  }
  const unsigned long places = std::max(twos, fives);
  if (places == 0) return value.get_num().get_str();
  const Integer scaled_num = value.get_num() * Pow10(places) / value.get_den();
  Integer magnitude = abs(scaled_num);
  std::string digits = magnitude.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places) + "." +
                    digits.substr(digits.size() - places);
  if (scaled_num < 0) out.insert(0, "-");
  return out;
}

double ToDouble(const Rational& value) { return value.get_d(); }

Rational FromDouble(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rational result(value);
  result.canonicalize();
  return result;
}

}  // namespace gasmip
