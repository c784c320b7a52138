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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gasmip {

// Exact rational numbers backed by GMP. All model coefficients, grid data and
// polyhedral computations use this type; doubles appear only at the solver
// boundary and in text output.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "12", "-3/4", "0.125", "1e-3", "-2.5E+2" exactly.
// Throws std::invalid_argument on malformed input.
Rational ParseRational(std::string_view text);

// Canonical "p/q" (or "p" for integers).
std::string ToFractionString(const Rational& value);

// Shortest exact decimal when the value has a terminating expansion,
// otherwise a 17-significant-digit float.
std::string ToDecimalString(const Rational& value);

double ToDouble(const Rational& value);

// Exact conversion; every finite double is a dyadic rational.
Rational FromDouble(double value);

inline bool IsInteger(const Rational& value) { return value.get_den() == 1; }

inline int Sign(const Rational& value) { return sgn(value); }

}  // namespace gasmip
