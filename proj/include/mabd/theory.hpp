/*
 * Copyright 2026 The mabd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Structural results on blocking: the lower bound on A_{2,1}, maximal
// blocking of designs with a zero-free row, and the H~ family.

#pragma once

#include <optional>
#include <string>

#include "mabd/wlp.hpp"

namespace mabd {

struct BoundReport {
  Rational raw_bound;
  BigInt modified_bound;  // >= 0
  Rational J;
  Rational eta;  // J - floor(J), in [0, 1)
};

/// Requires 1 <= p <= m - 1 (InvalidP) and n >= 1.
BoundReport a21_lower_bound(int n, int m, int p, int s);

/// One-decimal rendering: integers print bare, other values are rounded to
/// one decimal with ties toward zero and a trailing ".0" is dropped.
std::string format_one_decimal(const Rational& x);

struct MaximalBlocking {
  BlockScheme scheme;    // rank m - 1, flat = {x : u . x = 0}
  FieldVector message;   // u, the smallest message whose row uT has no zero
};

/// Empty when every row of the design contains a zero.
std::optional<MaximalBlocking> maximal_blocking(const TreatmentSpec& t);

/// Two-level designs only (WrongField otherwise): true iff every defining
/// word has even length.
bool is_even_design(const TreatmentSpec& t);

/// Columns: the s^{m-1} points whose first coordinate is 1, sorted by label.
TreatmentSpec build_h_tilde(int m, int s);

}  // namespace mabd
