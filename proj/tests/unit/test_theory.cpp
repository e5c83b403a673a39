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

#include <gtest/gtest.h>

#include "common.hpp"

namespace mabd {
namespace {

using testing::design;
using testing::scheme;

Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// The bound restated term by term, for comparison.
Rational bound_formula(int n, int m, int p, int s) {
  const Rational smp(BigInt(ipow(s, m - p)));
  const Rational J = Rational(n) * (smp / s - 1) / (smp - 1);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), J.get_num_mpz_t(), J.get_den_mpz_t());
  const Rational eta = J - Rational(fl);
  const Rational scale = rpow(Rational(s), 2) / smp;  // s^{-(m-p-2)}
  const Rational inner = Rational(n * n) + (smp - 1) * (J * J + eta * (1 - eta));
  return (Rational(-n * (n + s - 1)) + scale * inner) / (2 * (s - 1));
}

TEST(Bound, TableAnchors) {
  auto b = a21_lower_bound(6, 6, 2, 2);
  EXPECT_EQ(b.raw_bound, Rational(-3, 2));
  EXPECT_EQ(b.modified_bound, 0);
  EXPECT_EQ(format_one_decimal(b.raw_bound), "-1.5");
  EXPECT_EQ(a21_lower_bound(8, 6, 3, 2).raw_bound, 1);
  EXPECT_EQ(a21_lower_bound(20, 6, 4, 2).raw_bound, 57);
  EXPECT_EQ(format_one_decimal(a21_lower_bound(19, 6, 2, 2).raw_bound), "2.7");
  EXPECT_EQ(a21_lower_bound(29, 6, 4, 2).raw_bound, 126);
  EXPECT_EQ(a21_lower_bound(4, 3, 1, 2).raw_bound, 1);
}

TEST(Bound, MatchesFormulaAndInvariants) {
  for (int s : {2, 3}) {
    for (int m = 2; m <= 6; ++m) {
      for (int p = 1; p < m; ++p) {
        for (int n = 1; n <= 40; ++n) {
          const auto r = a21_lower_bound(n, m, p, s);
          EXPECT_EQ(r.raw_bound, bound_formula(n, m, p, s));
          EXPECT_GE(r.eta, 0);
          EXPECT_LT(r.eta, 1);
          EXPECT_GE(r.modified_bound, 0);
          EXPECT_GE(Rational(r.modified_bound), r.raw_bound);
          if (r.raw_bound < 0) EXPECT_EQ(r.modified_bound, 0);
          else EXPECT_LT(Rational(r.modified_bound), r.raw_bound + 1);
          if (r.raw_bound.get_den() == 1 && r.raw_bound >= 0) EXPECT_EQ(Rational(r.modified_bound), r.raw_bound);
        }
      }
    }
  }
}

TEST(Bound, MonotoneOverTableRange) {
  for (int p = 2; p <= 4; ++p) {
    for (int n = 6; n < 32; ++n) {
      EXPECT_LE(a21_lower_bound(n, 6, p, 2).raw_bound, a21_lower_bound(n + 1, 6, p, 2).raw_bound) << p << " " << n;
    }
  }
}

TEST(Bound, InvalidP) {
  for (int p : {0, 6, 7}) {
    try {
      a21_lower_bound(10, 6, p, 2);
      FAIL() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidP);
    }
  }
}

TEST(Bound, AchievedAtSmallestCase) {
  // Every RME scheme of every 2^{4-1} design: the minimum A_{2,1} is 1.
  BigInt best = -1;
  for (const auto& t : testing::all_designs(2, 3, 4)) {
    for (const auto& f : enumerate_flats(3, 2, 1)) {
      const auto b = scheme_from_flat(f);
      if (!is_rme(t, b)) continue;
      const auto a21 = compute_blocked_wlp(t, b).block(2);
      if (best < 0 || a21 < best) best = a21;
    }
  }
  EXPECT_EQ(best, 1);
  EXPECT_EQ(compute_blocked_wlp(design(2, 3, {4, 2, 1, 3}), scheme(2, 3, {7})).block(2), 1);
}

TEST(OneDecimal, Rounding) {
  EXPECT_EQ(format_one_decimal(Rational(57)), "57");
  EXPECT_EQ(format_one_decimal(Rational(-3, 2)), "-1.5");
  EXPECT_EQ(format_one_decimal(Rational(11, 4)), "2.7");    // tie goes toward zero
  EXPECT_EQ(format_one_decimal(Rational(-11, 4)), "-2.7");
  EXPECT_EQ(format_one_decimal(Rational(69, 25)), "2.8");
  EXPECT_EQ(format_one_decimal(Rational(1, 3)), "0.3");
  EXPECT_EQ(format_one_decimal(Rational(201, 20)), "10");  // 10.05 keeps no ".0"
  EXPECT_EQ(format_one_decimal(Rational(-1, 40)), "0");
  EXPECT_EQ(format_one_decimal(Rational(0)), "0");
}

TEST(MaximalBlocking, Examples) {
  const auto t = design(2, 3, {4, 2, 1, 7});
  const auto mb = maximal_blocking(t);
  ASSERT_TRUE(mb.has_value());
  EXPECT_EQ(mb->scheme.p(), 2);
  EXPECT_TRUE(is_rme(t, mb->scheme));
  EXPECT_FALSE(maximal_blocking(design(2, 2, {2, 1, 3})).has_value());
  for (int s : {2, 3}) {
    const auto ff = s == 2 ? design(2, 3, {1, 2, 4}) : design(3, 3, {1, 2, 5});
    EXPECT_TRUE(maximal_blocking(ff).has_value());
  }
}

TEST(MaximalBlocking, PropertiesOverSmallDesigns) {
  for (int s : {2, 3}) {
    for (int m = 2; m <= 3; ++m) {
      for (std::size_t n = m; n <= num_points(s, m); ++n) {
        for (const auto& t : testing::all_designs(s, m, n)) {
          const auto rows = expand_design(t);
          bool zero_free = false;
          for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto row = rows.row(r);
            zero_free = zero_free || std::none_of(row.begin(), row.end(), [](Elem e) { return e == 0; });
          }
          const auto mb = maximal_blocking(t);
          ASSERT_EQ(mb.has_value(), zero_free);
          if (s == 2) EXPECT_EQ(mb.has_value(), is_even_design(t));
          if (!mb) continue;
          EXPECT_TRUE(is_rme(t, mb->scheme));
          const auto d1 = principal_block(t, mb->scheme);
          ASSERT_EQ(d1.size(), static_cast<std::size_t>(s));
          for (std::size_t r = 1; r < d1.size(); ++r) {
            const auto row = d1.row(r);
            EXPECT_TRUE(std::none_of(row.begin(), row.end(), [](Elem e) { return e == 0; }));
          }
          // The chosen message gives a zero-free row.
          const auto u = t.generator().left_multiply(mb->message);
          EXPECT_TRUE(std::none_of(u.begin(), u.end(), [](Elem e) { return e == 0; }));
        }
      }
    }
  }
}

TEST(EvenDesign, Examples) {
  EXPECT_TRUE(is_even_design(design(2, 3, {4, 2, 1, 7})));
  EXPECT_FALSE(is_even_design(design(2, 2, {2, 1, 3})));
  EXPECT_TRUE(is_even_design(design(2, 3, {1, 2, 4})));
  try {
    is_even_design(design(3, 2, {1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongField);
  }
}

TEST(HTilde, Examples) {
  const auto h = build_h_tilde(3, 2);
  EXPECT_EQ(h.labels(), (std::vector<Label>{1, 3, 5, 7}));
  auto msb = h.labels(LabelConvention::MsbFirst);
  std::sort(msb.begin(), msb.end());
  EXPECT_EQ(msb, (std::vector<Label>{4, 5, 6, 7}));
  EXPECT_EQ(build_h_tilde(3, 3).n(), 9u);
  const auto h4 = build_h_tilde(4, 3);
  EXPECT_EQ(h4.n(), 27u);
  EXPECT_EQ(h4.k(), 23u);
  for (const auto& c : h4.columns()) EXPECT_EQ(c[0], 1);
  // The message e_0 gives the all-ones row, so maximal blocking exists.
  EXPECT_TRUE(maximal_blocking(h4).has_value());
}

TEST(HTilde, ProjectionsMeetBoundAtMaximalBlocking) {
  // s = 2, p = m - 1: every column pair sums into the flat.
  for (int m = 3; m <= 4; ++m) {
    const auto h = build_h_tilde(m, 2);
    const auto labels = h.labels();
    for (std::size_t n = m; n <= labels.size(); ++n) {
      std::vector<Label> sub(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n));
      TreatmentSpec t = [&] {
        try {
          return TreatmentSpec::from_labels(2, m, sub);
        } catch (const Error&) {
          return h;
        }
      }();
      if (t.n() != n) continue;
      const auto mb = maximal_blocking(t);
      ASSERT_TRUE(mb.has_value());
      const auto a21 = compute_blocked_wlp(t, mb->scheme).block(2);
      EXPECT_EQ(a21, BigInt(static_cast<long>(n * (n - 1) / 2)));
      EXPECT_EQ(Rational(a21), a21_lower_bound(static_cast<int>(n), m, m - 1, 2).raw_bound);
    }
  }
}

}  // namespace
}  // namespace mabd
