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

// Design catalogues: one design per line in the text design format, plus
//   name=<str> expect_wt=<a,...> expect_wb=<a,...> expect_c1=<int>
//   expect_c2=<int> [status=ambiguous]
// Blank lines and lines starting with '#' are skipped.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mabd/criteria.hpp"
#include "mabd/design_io.hpp"

namespace mabd {

struct ExpectedValues {
  std::vector<BigInt> wt;  // prefix of (A_{3,0}, A_{4,0}, ...)
  std::vector<BigInt> wb;  // prefix of (A_{2,1}, A_{3,1}, ...)
  std::optional<int> c1;
  std::optional<int> c2;

  bool empty() const noexcept { return wt.empty() && wb.empty() && !c1 && !c2; }
  bool operator==(const ExpectedValues&) const = default;
};

struct CatalogEntry {
  std::string name;
  DesignInput design;
  ExpectedValues expected;
  bool ambiguous = false;
  std::size_t line = 0;

  bool operator==(const CatalogEntry& o) const {
    return name == o.name && design == o.design && expected == o.expected && ambiguous == o.ambiguous;
  }
};

/// Throws Parse with "line L, column C" context; names must be unique.
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::string format_catalog_entry(const CatalogEntry& e);

/// The catalogue compiled into the library.
const char* bundled_catalog_text() noexcept;

/// W_t = A_{3..min(6,n),0} and W_b = A_{2..min(5,n),1}; `full` extends both to n.
std::vector<BigInt> truncated_wt(const WordLengthPattern& w, bool full = false);
std::vector<BigInt> truncated_wb(const WordLengthPattern& w, bool full = false);

struct FieldDiff {
  std::string field;
  std::string expected;
  std::string actual;
};

struct VerifyOutcome {
  std::string name;
  WordLengthPattern wlp;
  std::optional<ClearCounts> clear;
  std::vector<FieldDiff> diffs;

  bool pass() const noexcept { return diffs.empty(); }
};

VerifyOutcome verify_entry(const CatalogEntry& e, PairClearRule rule = PairClearRule::AnyComponent);

std::string join_values(const std::vector<BigInt>& v, char sep = ' ');

}  // namespace mabd
