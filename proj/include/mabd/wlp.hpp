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

// Power moments of row coincidences and their conversion to wordlength
// patterns, plus a brute-force dual-code oracle.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mabd/design.hpp"

namespace mabd {

using BigInt = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Coefficients

BigInt stirling2(unsigned k, unsigned j);
Rational q_coeff(int k, int i, int n, int s);
Rational c_coeff(int t, int i, int n, int s);

/// Integer rescaling of c_t(i; n, s), tabulated for 0 <= i <= t <= t_max:
///   z(t, i) = s^t c_t(i)              for i >= 1,
///   z(t, 0) = s^t c_t(0) / (s - 1).
/// All entries are integers and z(t, t) = (s - 1) t! for t >= 1.
class CoefficientTable {
 public:
  CoefficientTable(int n, int s, int t_max);

  /// Shared, memoized table for (n, s) covering at least t_max. Safe to call
  /// from any thread.
  static std::shared_ptr<const CoefficientTable> get(int n, int s, int t_max);

  int n() const noexcept { return n_; }
  int s() const noexcept { return s_; }
  int t_max() const noexcept { return t_max_; }
  const BigInt& z(int t, int i) const { return z_[idx(t, i)]; }

 private:
  std::size_t idx(int t, int i) const {
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(t + 1) / 2 +
           static_cast<std::size_t>(i);
  }
  int n_;
  int s_;
  int t_max_;
  std::vector<BigInt> z_;
};

// ---------------------------------------------------------------------------
// Coincidences and moments

enum class ProfileReference { NullRow, AllPairs };

struct CoincidenceProfile {
  ProfileReference reference = ProfileReference::NullRow;
  /// histogram[d] = number of (rows | row pairs) with d coincidences.
  std::vector<std::uint64_t> histogram;

  std::uint64_t total() const noexcept;
  bool operator==(const CoincidenceProfile&) const = default;
};

CoincidenceProfile coincidence_profile(const DesignRows& rows, ProfileReference ref);

/// Null-row profile of the code generated by the given columns, computed
/// from the cached inner-product table. `labels` are Yates labels in V_m.
CoincidenceProfile null_row_profile(const ProjectiveSpace& ps, std::span<const Label> labels);
/// Null-row profile of the principal block {uT : u . b = 0 for b in gens}.
CoincidenceProfile principal_null_row_profile(const ProjectiveSpace& ps,
                                              std::span<const Label> labels,
                                              std::span<const Label> block_generators);

/// P_t = sum_d histogram[d] d^t for t = 0..t_max (with 0^0 = 1).
std::vector<BigInt> power_sums(const CoincidenceProfile& profile, int t_max);

enum class MomentKind { Treatment, Block, PrincipalBlock, Unblocked };

struct MomentVector {
  MomentKind kind = MomentKind::Treatment;
  std::vector<Rational> values;

  int t_max() const noexcept { return static_cast<int>(values.size()) - 1; }
  const Rational& operator[](std::size_t t) const { return values.at(t); }
};

MomentVector moments_from_profile(const CoincidenceProfile& profile, int t_max, MomentKind kind);

/// K_{t,0} for t = 0..t_max from the null-row profile.
MomentVector moments_k0(const TreatmentSpec& t, int t_max);
/// K_t(D_1) for the principal block.
MomentVector principal_block_moments(const TreatmentSpec& t, const BlockScheme& b, int t_max);
/// K_{t,1} = L_{p-1} K_{t,0} + K_t(D_1)/s. Throws NotRME.
MomentVector moments_k1(const TreatmentSpec& t, const BlockScheme& b, int t_max);

/// Direct definition of K_{t,1} through the all-pairs double sum; O(N^2),
/// kept for verification.
MomentVector moments_k1_all_pairs(const TreatmentSpec& t, const BlockScheme& b, int t_max);

// ---------------------------------------------------------------------------
// Wordlength patterns

struct WordLengthPattern {
  /// a0[i] = A_{i,0}, i = 0..n, with a0[0] = 1 (the identity word).
  std::vector<BigInt> a0;
  /// a1[i] = A_{i,1}; empty for an unblocked design.
  std::vector<BigInt> a1;

  std::size_t n() const noexcept { return a0.empty() ? 0 : a0.size() - 1; }
  bool blocked() const noexcept { return !a1.empty(); }
  /// A_{i,0} with zero beyond n.
  BigInt treatment(std::size_t i) const { return i < a0.size() ? a0[i] : BigInt(0); }
  BigInt block(std::size_t i) const { return i < a1.size() ? a1[i] : BigInt(0); }

  bool operator==(const WordLengthPattern&) const = default;
};

/// Solves the triangular moment system for K_{t,0}, t = 0..n. Throws
/// NonIntegralPattern when a solved entry is fractional or negative.
WordLengthPattern wlp_from_moments(const MomentVector& k0, int n, int s);
/// Adds the block part from K_{t,1}; `wlp` must hold the treatment part.
WordLengthPattern blocked_wlp_from_moments(const WordLengthPattern& wlp, const MomentVector& k1,
                                           int n, int s, int p);

/// Integer fast path used by the search: treatment power sums P_t over N = s^m
/// rows, and optionally principal-block power sums over s^{m-p} rows.
WordLengthPattern wlp_from_power_sums(std::span<const BigInt> treatment, int n, int s, int m);
WordLengthPattern blocked_wlp_from_power_sums(std::span<const BigInt> treatment,
                                              std::span<const BigInt> principal, int n, int s,
                                              int m, int p);
/// Fills `wlp.a1` given an already solved treatment part.
void add_block_part_from_power_sums(WordLengthPattern& wlp, std::span<const BigInt> treatment,
                                    std::span<const BigInt> principal, int s, int m, int p);

/// Full moment pipeline.
WordLengthPattern compute_wlp(const TreatmentSpec& t);
WordLengthPattern compute_blocked_wlp(const TreatmentSpec& t, const BlockScheme& b);

// ---------------------------------------------------------------------------
// Oracles

struct EnumerationLimits {
  /// Upper bound on candidate words examined by the oracle.
  std::uint64_t max_words = std::uint64_t{1} << 24;
  /// Reads MABD_MAX_DUAL_WORDS when set.
  static EnumerationLimits from_env();
};

/// A defining word up to scalar multiples (first nonzero coefficient 1).
struct Word {
  FieldVector coeffs;
  bool confounded = false;  // true: T c is a nonzero point of span(B)
  std::size_t weight() const noexcept;
};

/// Brute-force count of treatment words (T c = 0) and block-confounded words
/// (T c in span(B) minus 0). Words heavier than `max_weight` are skipped.
/// Throws TooLarge when the candidate count exceeds the limit.
WordLengthPattern dual_word_enumeration(const TreatmentSpec& t, const BlockScheme* b,
                                        std::optional<int> max_weight = std::nullopt,
                                        EnumerationLimits limits = {});

/// Normalized words of weight <= max_weight, found by support enumeration.
std::vector<Word> low_weight_words(const TreatmentSpec& t, const BlockScheme* b, int max_weight,
                                   EnumerationLimits limits = {});

using SplitWeightDistribution = std::map<std::pair<int, int>, BigInt>;

/// Split weight distribution of the linear code spanned by the rows of `g`
/// over the coordinate split (0..n1-1 | n1..n-1).
SplitWeightDistribution split_weight_distribution(const FieldMatrix& g, std::size_t n1,
                                                  EnumerationLimits limits = {});

/// Both sides of the split-weight Pless identity for the code generated by
/// `g` (rank m), split at n1:
///   lhs = s^{-m} sum B_{i1,i2}(D) i1^k1 i2^k2,
///   rhs = sum B_{j1,j2}(D^perp) Q_k1(j1; n1, s) Q_k2(j2; n2, s).
std::pair<Rational, Rational> pless_identity_check(const FieldMatrix& g, std::size_t n1, int k1,
                                                   int k2, EnumerationLimits limits = {});

/// K_t of the unblocked view expressed through K_{t,0} and K_{t,1}.
MomentVector unblocked_moments_via_lemma5(const MomentVector& k0, const MomentVector& k1, int p,
                                          int s, int t_max);

}  // namespace mabd
