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

// Combined wordlength patterns, their lexicographic order, clear-effect
// counts and the classification of how the four criteria disagree.

#pragma once

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mabd/wlp.hpp"

namespace mabd {

enum class Criterion { WSCF, WCC, W1, W2 };

inline constexpr std::array<Criterion, 4> kAllCriteria = {Criterion::WSCF, Criterion::WCC,
                                                          Criterion::W1, Criterion::W2};

const char* to_string(Criterion c) noexcept;
/// Accepts "wscf", "wcc", "w1", "w2" in any case.
Criterion parse_criterion(const std::string& name);

struct CombinedPattern {
  Criterion criterion = Criterion::WSCF;
  std::size_t n = 0;
  std::vector<BigInt> terms;

  bool operator==(const CombinedPattern&) const = default;
};

/// Every A term with index <= n appears once; W_cc pairs the weighted sum
/// C(2i-1, i) A_{2i-1,0} + A_{i,1} for i = 2..n, each followed by A_{2i,0}
/// while 2i <= n.
CombinedPattern combined_pattern(const WordLengthPattern& wlp, Criterion c);

/// Lexicographic; less means less aberration. Throws CriterionMismatch on
/// patterns of different criteria or lengths.
std::strong_ordering compare(const CombinedPattern& a, const CombinedPattern& b);

struct ClearCounts {
  int c1 = 0;
  int c2 = 0;
  bool operator==(const ClearCounts&) const = default;
};

/// For s > 2 a two-factor interaction has s - 1 components e_f + a e_g.
enum class PairClearRule { AnyComponent, AllComponents };

/// An effect component v (weight 1 or 2) is clear when no v + eW with W a
/// treatment word has weight <= 2 and T v is not a block effect. Main effect
/// f is clear iff e_f is clear. Throws NotRME.
ClearCounts clear_counts(const TreatmentSpec& t, const BlockScheme& b,
                         PairClearRule rule = PairClearRule::AnyComponent);

const char* to_string(PairClearRule r) noexcept;
PairClearRule parse_pair_clear_rule(const std::string& name);

enum class Situation { AllSame, S1, S2, S3, S4, Other };
const char* to_string(Situation s) noexcept;

/// Identity of a (W_t, W_b) pair, used to compare winner sets.
std::string pattern_signature(const WordLengthPattern& w);

/// Criteria agree when their winner signature sets share a member; a group
/// agrees when the intersection over the group is nonempty.
Situation classify_situation(const std::map<Criterion, std::set<std::string>>& winners);

}  // namespace mabd
