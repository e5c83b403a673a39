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

#include "mabd/theory.hpp"

#include <algorithm>

namespace mabd {

namespace {

BigInt floor_of(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational power(int s, int e) {
  Rational r = 1;
  for (int i = 0; i < std::abs(e); ++i) r *= s;
  if (e < 0) r = 1 / r;
  return r;
}

}  // namespace

BoundReport a21_lower_bound(int n, int m, int p, int s) {
  const PrimeField field(s);
  (void)field;
  if (p < 1 || p > m - 1) {
    throw Error(Errc::InvalidP, "p must satisfy 1 <= p <= m-1 (got p=" + std::to_string(p) +
                                    ", m=" + std::to_string(m) + ")");
  }
  if (n < 1) throw Error(Errc::OutOfRange, "n must be positive");
  const int q = m - p;
  const Rational sq = power(s, q);
  Rational J = Rational(n) * (power(s, q - 1) - 1) / (sq - 1);
  J.canonicalize();
  Rational eta = J - Rational(floor_of(J));
  eta.canonicalize();
  Rational inner = Rational(n * n) + (sq - 1) * (J * J + eta * (1 - eta));
  Rational raw = -Rational(n) * (n + s - 1) + power(s, -(q - 2)) * inner;
  raw /= 2 * (s - 1);
  raw.canonicalize();
  BigInt modified;
  if (raw.get_den() == 1 && sgn(raw) >= 0) modified = raw.get_num();
  else modified = std::max(BigInt(0), BigInt(ceil_of(raw)));
  return BoundReport{raw, modified, J, eta};
}

std::string format_one_decimal(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  // Round |x| * 10 to the nearest integer with ties going down.
  Rational a = abs(x) * 10;
  a.canonicalize();
  BigInt fl = floor_of(a);
  const Rational frac = a - Rational(fl);
  if (frac > Rational(1, 2)) fl += 1;
  const bool neg = sgn(x) < 0 && fl != 0;
  BigInt whole = fl / 10;
  BigInt tenth = fl % 10;
  std::string out = neg ? "-" : "";
  out += whole.get_str();
  if (tenth != 0) out += "." + tenth.get_str();
  return out;
}

std::optional<MaximalBlocking> maximal_blocking(const TreatmentSpec& t) {
  const int s = t.s();
  const int m = t.m();
  if (m < 2) return std::nullopt;
  const FieldMatrix g = t.generator();
  const auto count = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(m));
  for (std::uint64_t v = 1; v < count; ++v) {
    const FieldVector u = message_vector(v, s, m);
    const FieldVector row = g.left_multiply(u);
    if (std::any_of(row.begin(), row.end(), [](Elem e) { return e == 0; })) continue;
    const FieldMatrix hyper = null_space(FieldMatrix::from_rows(t.field(), {u}, static_cast<std::size_t>(m)));
    std::vector<PGPoint> gens;
    for (std::size_t r = 0; r < hyper.rows(); ++r) {
      auto rr = hyper.row(r);
      gens.emplace_back(s, FieldVector(rr.begin(), rr.end()));
    }
    return MaximalBlocking{BlockScheme(s, m, std::move(gens)), u};
  }
  return std::nullopt;
}

bool is_even_design(const TreatmentSpec& t) {
  if (t.s() != 2) throw Error(Errc::WrongField, "even designs are defined for s = 2");
  const WordLengthPattern w = compute_wlp(t);
  for (std::size_t i = 1; i < w.a0.size(); i += 2) {
    if (w.a0[i] != 0) return false;
  }
  return true;
}

TreatmentSpec build_h_tilde(int m, int s) {
  const PrimeField field(s);
  (void)field;
  if (m < 2) throw Error(Errc::InvalidDesign, "H~ needs m >= 2");
  std::vector<PGPoint> cols;
  const auto count = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(m - 1));
  for (std::uint64_t c = 0; c < count; ++c) {
    FieldVector v(static_cast<std::size_t>(m), 0);
    v[0] = 1;
    const FieldVector rest = message_vector(c, s, m - 1);
    std::copy(rest.begin(), rest.end(), v.begin() + 1);
    cols.emplace_back(s, std::move(v));
  }
  std::sort(cols.begin(), cols.end(), [](const PGPoint& a, const PGPoint& b) {
    return point_to_label(a) < point_to_label(b);
  });
  return TreatmentSpec(s, m, std::move(cols));
}

}  // namespace mabd
