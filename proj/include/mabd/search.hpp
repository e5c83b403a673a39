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

// Exhaustive search over blocking flats and treatment designs.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mabd/criteria.hpp"

namespace mabd {

/// Number of p-dimensional subspaces of V_m over GF(s).
BigInt gaussian_binomial(int m, int p, int s);

/// Every p-dimensional subspace of V_m as its normalized point set. Flats
/// are ordered by their sorted label lists.
std::vector<Flat> enumerate_flats(int m, int s, int p);

/// Basis of a flat: points taken greedily in label order, keeping each one
/// that is independent of those already kept.
BlockScheme scheme_from_flat(const Flat& f);

struct SearchLimits {
  std::uint64_t max_subsets = 10'000'000;
  std::uint64_t max_dual_words = std::uint64_t{1} << 24;
  /// Honors MABD_MAX_SUBSETS and MABD_MAX_DUAL_WORDS.
  static SearchLimits from_env();
};

/// One stage of the capped column-extension procedure.
struct CapStage {
  int n;
  long cap;
};

/// cap at stage n is `a3_cap`; stage j - 1 gets cap_j - ceil(3 cap_j / j),
/// floored at 0, down to stage `n_min`. Ordered from n_min up to n.
std::vector<CapStage> cap_schedule(int n, long a3_cap, int n_min);

enum class TreatmentSource { Fixed, AllSubsets, Extension };
const char* to_string(TreatmentSource s) noexcept;

struct EnumerationStats {
  std::uint64_t candidates = 0;       // subsets or extensions examined
  std::uint64_t full_rank = 0;        // of those, spanning V_m
  std::uint64_t classes = 0;          // signatures kept
  std::vector<CapStage> schedule;     // extension mode only
};

/// ALL_SUBSETS when `a3_cap` is empty, else capped EXTENSION. One design is
/// kept per invariant signature (treatment pattern plus the per-column split
/// of the null-row profile); it is the first in enumeration order.
std::vector<TreatmentSpec> enumerate_treatment_designs(int s, int m, int n,
                                                       std::optional<long> a3_cap,
                                                       SearchLimits limits = {},
                                                       EnumerationStats* stats = nullptr);
/// Same, with the source chosen explicitly; an uncapped EXTENSION grows every
/// kept class at each stage.
std::vector<TreatmentSpec> enumerate_treatment_designs(int s, int m, int n, TreatmentSource source,
                                                       std::optional<long> a3_cap,
                                                       SearchLimits limits = {},
                                                       EnumerationStats* stats = nullptr);

struct SearchSpace {
  int s = 2;
  int m = 3;
  int n = 4;
  int p = 1;
  TreatmentSource source = TreatmentSource::AllSubsets;
  std::vector<TreatmentSpec> fixed;  // used by TreatmentSource::Fixed
  std::optional<long> a3_cap;        // used by TreatmentSource::Extension
  std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};
  PairClearRule pair_rule = PairClearRule::AnyComponent;
  unsigned threads = 1;
  SearchLimits limits;
};

struct Candidate {
  TreatmentSpec treatment;
  BlockScheme block;
  WordLengthPattern wlp;
  ClearCounts clear;
};

struct CriterionResult {
  Criterion criterion;
  CombinedPattern pattern;
  /// All tied optima; the first is the canonical representative, the
  /// lexicographically smallest (treatment labels, block labels).
  std::vector<Candidate> winners;
};

struct SearchStats {
  std::uint64_t treatment_designs = 0;
  std::uint64_t flats = 0;
  std::uint64_t schemes_examined = 0;  // RME (design, flat) pairs evaluated
  std::uint64_t work_units = 0;        // principal-block rows scanned
  EnumerationStats enumeration;
};

struct SearchResult {
  std::vector<CriterionResult> per_criterion;  // in the order requested
  std::optional<Situation> situation;          // when all four criteria ran
  SearchStats stats;

  const CriterionResult& result(Criterion c) const;
};

/// Exhaustive scan of every RME flat of dimension p. Throws NoRMEScheme.
SearchResult best_blocking(const TreatmentSpec& t, int p,
                           std::span<const Criterion> criteria = kAllCriteria,
                           unsigned threads = 1,
                           PairClearRule rule = PairClearRule::AnyComponent);

/// Global minima over (treatment design, flat) pairs. Throws TooLarge,
/// NoRMEScheme or InvalidP.
SearchResult ma_blocked_search(const SearchSpace& space);

}  // namespace mabd
