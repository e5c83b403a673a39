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

#include <set>

#include "common.hpp"

namespace mabd {
namespace {

using testing::design;
using testing::scheme;

std::set<std::string> row_strings(const DesignRows& rows) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string r;
    for (Elem e : rows.row(i)) r += static_cast<char>('0' + e);
    out.insert(r);
  }
  return out;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::Parse;
}

// Catalogue order rebuilt from scratch: e_f, then q + a e_f for a = 1..s-1
// and every earlier point q in order.
std::vector<FieldVector> yates_order(int s, int m) {
  std::vector<FieldVector> pts;
  for (int f = 0; f < m; ++f) {
    const std::size_t prev = pts.size();
    FieldVector e(m, 0);
    e[f] = 1;
    pts.push_back(e);
    for (int a = 1; a < s; ++a) {
      for (std::size_t q = 0; q < prev; ++q) {
        FieldVector v = pts[q];
        v[f] = static_cast<Elem>((v[f] + a) % s);
        pts.push_back(v);
      }
    }
  }
  return pts;
}

TEST(Labels, MostSignificantFirstExamples) {
  const auto msb = LabelConvention::MsbFirst;
  EXPECT_EQ(label_to_point(1, 2, 5, msb).coords(), (FieldVector{0, 0, 0, 0, 1}));
  EXPECT_EQ(label_to_point(7, 2, 3, msb).coords(), (FieldVector{1, 1, 1}));
  EXPECT_EQ(label_to_point(22, 3, 4, msb).coords(), (FieldVector{0, 2, 1, 1}));
  EXPECT_FALSE(label_to_point(22, 3, 4, msb).is_normalized());
  EXPECT_EQ(label_to_point(1, 2, 5, LabelConvention::LsbFirst).coords(), (FieldVector{1, 0, 0, 0, 0}));
}

TEST(Labels, YatesMatchesConstructiveOrder) {
  for (int s : {2, 3, 5}) {
    for (int m = 1; m <= 4; ++m) {
      const auto want = yates_order(s, m);
      ASSERT_EQ(want.size(), num_points(s, m));
      for (std::size_t i = 0; i < want.size(); ++i) {
        const auto p = label_to_point(static_cast<Label>(i + 1), s, m);
        EXPECT_EQ(p.coords(), want[i]) << "s=" << s << " m=" << m << " label=" << i + 1;
        EXPECT_TRUE(p.is_normalized());
      }
    }
  }
}

TEST(Labels, IndependentColumns) {
  for (auto [s, want] : {std::pair{2, std::vector<Label>{1, 2, 4, 8, 16, 32}},
                         std::pair{3, std::vector<Label>{1, 2, 5, 14}}}) {
    for (std::size_t f = 0; f < want.size(); ++f) {
      FieldVector e(want.size(), 0);
      e[f] = 1;
      EXPECT_EQ(point_to_label(PGPoint(s, e)), want[f]);
    }
  }
}

TEST(Labels, RoundTripEveryConvention) {
  for (int s : {2, 3}) {
    for (int m = 1; m <= 4; ++m) {
      const Label np = static_cast<Label>(num_points(s, m));
      for (Label l = 1; l <= np; ++l) EXPECT_EQ(point_to_label(label_to_point(l, s, m)), l);
      const Label top = static_cast<Label>(ipow(s, m) - 1);
      for (auto conv : {LabelConvention::MsbFirst, LabelConvention::LsbFirst}) {
        for (Label l = 1; l <= top; ++l) EXPECT_EQ(point_to_label(label_to_point(l, s, m, conv), conv), l);
      }
    }
  }
}

TEST(Labels, OutOfRange) {
  EXPECT_EQ(code_of([] { label_to_point(0, 2, 3); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { label_to_point(8, 2, 3); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { label_to_point(8, 2, 3, LabelConvention::MsbFirst); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { label_to_point(14, 3, 3); }), Errc::OutOfRange);
}

TEST(TreatmentSpec, Invariants) {
  EXPECT_EQ(code_of([] { design(2, 3, {1, 2, 1, 4}); }), Errc::InvalidDesign);
  EXPECT_EQ(code_of([] { design(2, 3, {1, 2, 3}); }), Errc::InvalidDesign);  // rank 2
  EXPECT_EQ(code_of([] { design(2, 3, {1, 2}); }), Errc::InvalidDesign);     // n < m
  // An unnormalized label is rescaled, and 2x is the same point as x.
  const auto t = design(3, 4, {22, 27, 9, 3, 1}, LabelConvention::MsbFirst);
  EXPECT_EQ(t.rescaled_inputs(), 1u);
  EXPECT_EQ(t.columns()[0].coords(), (FieldVector{0, 1, 2, 2}));
  EXPECT_EQ(code_of([] { design(3, 2, {1, 2, 3, 6}, LabelConvention::MsbFirst); }), Errc::InvalidDesign);
}

TEST(ExpandDesign, Examples) {
  const auto msb = LabelConvention::MsbFirst;
  EXPECT_EQ(row_strings(expand_design(design(2, 2, {2, 1, 3}, msb))),
            (std::set<std::string>{"000", "011", "101", "110"}));
  const auto ff = expand_design(design(3, 2, {1, 2}));
  EXPECT_EQ(ff.size(), 9u);
  EXPECT_EQ(row_strings(ff).size(), 9u);
  const auto d = expand_design(design(2, 3, {4, 2, 1, 7}));
  ASSERT_EQ(d.size(), 8u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    int w = 0;
    for (Elem e : d.row(i)) w += e;
    EXPECT_EQ(w % 2, 0);
  }
  // Row order follows the message counter, so row 0 is the null treatment.
  for (Elem e : d.row(0)) EXPECT_EQ(e, 0);
  EXPECT_TRUE(d.has_zero_row());
}

TEST(ExpandDesign, LinearCodeClosure) {
  for (int s : {2, 3}) {
    for (int m = 2; m <= (s == 2 ? 4 : 3); ++m) {
      for (const auto& t : testing::all_designs(s, m, static_cast<std::size_t>(m + 1))) {
        const auto rows = expand_design(t);
        const auto set = row_strings(rows);
        ASSERT_EQ(set.size(), ipow(s, m));
        for (std::size_t i = 0; i < rows.size(); ++i) {
          for (std::size_t j = 0; j < rows.size(); ++j) {
            std::string sum;
            for (std::size_t c = 0; c < t.n(); ++c) sum += static_cast<char>('0' + (rows.row(i)[c] + rows.row(j)[c]) % s);
            ASSERT_TRUE(set.count(sum));
          }
          std::string twice;
          for (std::size_t c = 0; c < t.n(); ++c) twice += static_cast<char>('0' + (2 * rows.row(i)[c]) % s);
          ASSERT_TRUE(set.count(twice));
        }
        for (std::size_t c = 0; c < t.n(); ++c) {
          std::set<Elem> vals;
          for (std::size_t i = 0; i < rows.size(); ++i) vals.insert(rows.row(i)[c]);
          EXPECT_EQ(vals.size(), static_cast<std::size_t>(s));
        }
      }
    }
  }
}

TEST(ExpandFlat, Examples) {
  const PGPoint b011(2, {0, 1, 1});
  const BlockScheme one(2, 3, {b011});
  auto f = expand_flat(one);
  ASSERT_EQ(f.points.size(), 1u);
  EXPECT_EQ(f.points[0], b011);

  const BlockScheme two(2, 3, {PGPoint(2, {0, 0, 1}), PGPoint(2, {0, 1, 0})});
  f = expand_flat(two);
  ASSERT_EQ(f.points.size(), 3u);
  std::set<FieldVector> got;
  for (const auto& p : f.points) got.insert(p.coords());
  EXPECT_EQ(got, (std::set<FieldVector>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}}));

  const auto f3 = expand_flat(scheme(3, 3, {1, 5}));
  EXPECT_EQ(f3.points.size(), 4u);
  EXPECT_EQ(code_of([] { scheme(2, 3, {1, 2, 3}); }), Errc::DependentGenerators);
}

TEST(ExpandFlat, SortedClosedAndOrderFree) {
  std::mt19937 rng(7);
  for (int s : {2, 3}) {
    const int m = 4;
    const Label np = static_cast<Label>(num_points(s, m));
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Label> gens;
      const int p = 1 + static_cast<int>(rng() % 3);
      while (static_cast<int>(gens.size()) < p) {
        const Label l = 1 + rng() % np;
        if (std::find(gens.begin(), gens.end(), l) == gens.end()) gens.push_back(l);
      }
      Flat f;
      try {
        f = expand_flat(scheme(s, m, gens));
      } catch (const Error&) {
        continue;
      }
      EXPECT_EQ(f.points.size(), num_points(s, p));
      const auto labels = f.labels();
      EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end()));
      for (const auto& a : f.points) {
        for (const auto& b : f.points) {
          for (int c = 1; c < s; ++c) {
            FieldVector v(m);
            bool zero = true;
            for (int i = 0; i < m; ++i) {
              v[i] = static_cast<Elem>((a[i] + c * b[i]) % s);
              zero = zero && v[i] == 0;
            }
            if (!zero) EXPECT_TRUE(f.contains(PGPoint(s, v)));
          }
        }
      }
      std::reverse(gens.begin(), gens.end());
      EXPECT_EQ(expand_flat(scheme(s, m, gens)).labels(), labels);
    }
  }
}

TEST(IsRme, Examples) {
  const auto t = design(2, 3, {4, 2, 1, 7});
  EXPECT_TRUE(is_rme(t, scheme(2, 3, {3})));
  EXPECT_FALSE(is_rme(t, scheme(2, 3, {7})));
  const auto full = design(2, 2, {1, 2, 3});
  for (Label b = 1; b <= 3; ++b) EXPECT_FALSE(is_rme(full, scheme(2, 2, {b})));
}

TEST(PrincipalBlock, Examples) {
  const auto t = design(2, 3, {4, 2, 1, 7});
  const auto b = scheme(2, 3, {3});
  EXPECT_EQ(row_strings(principal_block(t, b)), (std::set<std::string>{"0000", "1001", "0110", "1111"}));
  const auto all = principal_block(t, scheme(2, 3, {1, 2, 4}));
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(row_strings(all), (std::set<std::string>{"0000"}));
}

TEST(PrincipalBlock, CosetsPartitionTheDesign) {
  for (int s : {2, 3}) {
    const int m = s == 2 ? 4 : 3;
    const auto designs = testing::all_designs(s, m, static_cast<std::size_t>(m + 1));
    for (std::size_t di = 0; di < designs.size(); di += 7) {
      const auto& t = designs[di];
      for (int p = 1; p < m; ++p) {
        for (const auto& flat : enumerate_flats(m, s, p)) {
          const BlockScheme b = scheme_from_flat(flat);
          const auto d1 = principal_block(t, b);
          ASSERT_EQ(d1.size(), ipow(s, m - p));
          // Each design row sits in exactly one coset x + D1.
          const auto d = expand_design(t);
          const auto block_set = row_strings(d1);
          std::map<std::string, int> coset_of;
          int next = 0;
          for (std::size_t i = 0; i < d.size(); ++i) {
            std::string r;
            for (Elem e : d.row(i)) r += static_cast<char>('0' + e);
            if (coset_of.count(r)) continue;
            for (const auto& y : block_set) {
              std::string z;
              for (std::size_t c = 0; c < t.n(); ++c) z += static_cast<char>('0' + (r[c] - '0' + y[c] - '0') % s);
              ASSERT_FALSE(coset_of.count(z));
              coset_of[z] = next;
            }
            ++next;
          }
          EXPECT_EQ(coset_of.size(), d.size());
          EXPECT_EQ(static_cast<std::uint64_t>(next), ipow(s, p));
        }
      }
    }
  }
}

TEST(UnblockedView, Examples) {
  const auto t = design(2, 3, {4, 2, 1, 7});
  const auto u = unblocked_view(t, scheme(2, 3, {3}));
  EXPECT_EQ(u.labels(), (std::vector<Label>{4, 2, 1, 7, 3}));
  const auto t3 = design(3, 3, {1, 2, 5, 3});
  EXPECT_EQ(unblocked_view(t3, scheme(3, 3, {4, 6})).n(), 8u);
  EXPECT_EQ(code_of([&] { unblocked_view(t, scheme(2, 3, {7})); }), Errc::NotRME);
  // p = 2 leaves exactly the 3 points outside T: the view is saturated.
  const auto sat = unblocked_view(t, scheme(2, 3, {3, 5}));
  EXPECT_EQ(sat.n(), num_points(2, 3));
}

TEST(ProjectiveSpace, SharedAndConsistent) {
  const auto a = ProjectiveSpace::get(3, 3);
  const auto b = ProjectiveSpace::get(3, 3);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(a->num_points(), 13u);
  EXPECT_EQ(a->num_messages(), 27u);
  const PrimeField f(3);
  for (std::size_t u = 0; u < a->num_messages(); ++u) {
    const auto msg = message_vector(u, 3, 3);
    for (Label l = 1; l <= 13; ++l) EXPECT_EQ(a->dot(u, l), f.dot(msg, a->point(l).coords()));
  }
}

}  // namespace
}  // namespace mabd
