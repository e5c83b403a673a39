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

// Helpers shared by the unit and acceptance suites. Nothing here calls the
// moment pipeline; the brute-force routines are independent oracles.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mabd/catalog.hpp"
#include "mabd/search.hpp"
#include "mabd/theory.hpp"

namespace mabd::testing {

inline TreatmentSpec design(int s, int m, std::vector<Label> labels,
                            LabelConvention conv = LabelConvention::Yates) {
  return TreatmentSpec::from_labels(s, m, labels, conv);
}

inline BlockScheme scheme(int s, int m, std::vector<Label> labels,
                          LabelConvention conv = LabelConvention::Yates) {
  return BlockScheme::from_labels(s, m, labels, conv);
}

inline std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

/// Calls f on every k-subset of {1..n} in lexicographic order.
inline void for_each_subset(Label n, std::size_t k, const std::function<void(const std::vector<Label>&)>& f) {
  if (k > n) return;
  std::vector<Label> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Label>(i + 1);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - (k - i)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// All full-rank n-column designs over GF(s) with m rows.
inline std::vector<TreatmentSpec> all_designs(int s, int m, std::size_t n) {
  std::vector<TreatmentSpec> out;
  const auto L = static_cast<Label>(num_points(s, m));
  for_each_subset(L, n, [&](const std::vector<Label>& labels) {
    try {
      out.push_back(TreatmentSpec::from_labels(s, m, labels));
    } catch (const Error&) {
      // rank deficient
    }
  });
  return out;
}

/// Every blocked regular design (T, flat) with T over n columns, as the
/// treatment word and block word counts found by enumerating every
/// coefficient vector of V_n directly. Independent of wlp.cpp.
struct BruteCounts {
  std::vector<long> a0;
  std::vector<long> a1;
};

inline BruteCounts brute_force_counts(const TreatmentSpec& t, const BlockScheme* b) {
  const int s = t.s();
  const std::size_t n = t.n();
  const std::size_t m = static_cast<std::size_t>(t.m());
  BruteCounts out{std::vector<long>(n + 1, 0), std::vector<long>(n + 1, 0)};
  std::vector<PGPoint> flat;
  if (b) flat = expand_flat(*b).points;
  std::vector<int> c(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && ++c[i] == s) c[i++] = 0;
    if (i == n) break;
    // Count one representative per projective class: first nonzero is 1.
    std::size_t first = 0;
    while (c[first] == 0) ++first;
    if (c[first] != 1) continue;
    std::vector<int> v(m, 0);
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!c[j]) continue;
      ++w;
      for (std::size_t r = 0; r < m; ++r) v[r] = (v[r] + c[j] * t.columns()[j][r]) % s;
    }
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) {
      ++out.a0[w];
      continue;
    }
    FieldVector fv(v.begin(), v.end());
    const PGPoint p(s, fv);
    for (const auto& q : flat) {
      if (p.same_point(q)) {
        ++out.a1[w];
        break;
      }
    }
  }
  return out;
}

}  // namespace mabd::testing
