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

// Command-line front end. Everything the `mabd` executable does is reachable
// through run_cli so tests can drive it without spawning processes.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mabd/catalog.hpp"
#include "mabd/search.hpp"
#include "mabd/theory.hpp"

namespace mabd {

/// Stable exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // usage or parse error, invalid input
  kExitMismatch = 2,  // verification or oracle disagreement
  kExitGuard = 3,     // a size guard tripped
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit status for a library error.
int exit_code_for(const Error& e) noexcept;

// JSON forms shared by the commands. Integers that fit in 64 bits are JSON
// numbers, larger ones decimal strings; rationals are {"num", "den"}.
nlohmann::json big_to_json(const BigInt& x);
BigInt big_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& x);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json wlp_to_json(const WordLengthPattern& w);
WordLengthPattern wlp_from_json(const nlohmann::json& j);

nlohmann::json bound_to_json(int n, int p, const BoundReport& r);
BoundReport bound_from_json(const nlohmann::json& j);

nlohmann::json candidate_to_json(const Candidate& c, PairClearRule rule = PairClearRule::AnyComponent);
nlohmann::json search_result_to_json(const SearchSpace& space, const SearchResult& r);

/// Inclusive "a..b" or a single integer.
std::pair<int, int> parse_int_range(const std::string& text);

}  // namespace mabd
