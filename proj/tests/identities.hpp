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

// Direct definitions used by the identity checks.

#pragma once

#include <random>

#include "common.hpp"

namespace mabd::testing {

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline BigInt stirling_recurrence(int k, int j) {
  std::vector<std::vector<BigInt>> s(k + 1, std::vector<BigInt>(k + 1, 0));
  s[0][0] = 1;
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= a; ++b) s[a][b] = BigInt(b) * s[a - 1][b] + s[a - 1][b - 1];
  }
  return j <= k ? s[k][j] : BigInt(0);
}

/// Rows of D_F: for every message u, the values u . f over the flat.
inline DesignRows flat_rows(int s, int m, const Flat& f) {
  DesignRows rows(s, f.points.size());
  const PrimeField field(s);
  for (std::uint64_t u = 0; u < ipow(s, m); ++u) {
    const auto msg = message_vector(u, s, m);
    FieldVector r;
    for (const auto& p : f.points) r.push_back(field.dot(msg, p.coords()));
    rows.push_back(r);
  }
  return rows;
}

inline std::size_t coincidences(std::span<const Elem> a, std::span<const Elem> b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] == b[i];
  return d;
}

/// The double-sum definitions evaluated directly.
inline Rational all_pairs_k0(const DesignRows& d, int t) {
  BigInt sum = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      BigInt x;
      mpz_ui_pow_ui(x.get_mpz_t(), coincidences(d.row(i), d.row(j)), static_cast<unsigned long>(t));
      sum += x;
    }
  }
  Rational r(sum, BigInt(d.size()) * BigInt(d.size()));
  r.canonicalize();
  return r;
}

inline Rational all_pairs_k1(const DesignRows& dt, const DesignRows& df, int t) {
  BigInt sum = 0;
  for (std::size_t i = 0; i < dt.size(); ++i) {
    for (std::size_t j = 0; j < dt.size(); ++j) {
      BigInt x;
      mpz_ui_pow_ui(x.get_mpz_t(), coincidences(dt.row(i), dt.row(j)), static_cast<unsigned long>(t));
      sum += x * static_cast<unsigned long>(coincidences(df.row(i), df.row(j)));
    }
  }
  Rational r(sum, BigInt(dt.size()) * BigInt(dt.size()));
  r.canonicalize();
  return r;
}

struct RandomBlocked {
  TreatmentSpec t;
  BlockScheme b;
};

/// Random RME (T, B) with s^m <= 81.
inline RandomBlocked random_blocked(std::mt19937& rng, int s) {
  while (true) {
    const int m = 2 + static_cast<int>(rng() % (s == 2 ? 4 : 3));
    const int p = 1 + static_cast<int>(rng() % (m - 1));
    const auto flats = enumerate_flats(m, s, p);
    const Flat& f = flats[rng() % flats.size()];
    std::vector<Label> free;
    for (Label l = 1; l <= num_points(s, m); ++l) {
      if (!f.contains(label_to_point(l, s, m))) free.push_back(l);
    }
    std::shuffle(free.begin(), free.end(), rng);
    const std::size_t n = static_cast<std::size_t>(m) + rng() % (free.size() - m + 1);
    free.resize(n);
    try {
      return {TreatmentSpec::from_labels(s, m, free), scheme_from_flat(f)};
    } catch (const Error&) {
      continue;
    }
  }
}

}  // namespace mabd::testing
