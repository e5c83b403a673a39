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

#include "mabd/wlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace mabd {

namespace {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(unsigned k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

BigInt bpow(long base, unsigned exp) {
  BigInt r;
  BigInt b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, unsigned exp) {
  Rational r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_divisible(const BigInt& num, const BigInt& den, BigInt& out, int t, const char* part) {
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw Error(Errc::NonIntegralPattern, std::string(part) + " entry at length " +
                                              std::to_string(t) + " is not an integer");
  }
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (sgn(out) < 0) {
    throw Error(Errc::NonIntegralPattern,
                std::string(part) + " entry at length " + std::to_string(t) + " is negative");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Coefficients

BigInt stirling2(unsigned k, unsigned j) {
  if (j > k) return 0;
  BigInt acc = 0;
  for (unsigned i = 0; i <= j; ++i) {
    BigInt term = binomial(j, i) * bpow(i, k);
    if ((j - i) % 2) acc -= term;
    else acc += term;
  }
  // 0^0 = 1 makes S(0, 0) = 1.
  return acc / factorial(j);
}

Rational q_coeff(int k, int i, int n, int s) {
  if (i < 0 || i > n || i > k) return 0;
  Rational acc = 0;
  for (int j = i; j <= k; ++j) {
    Rational term(factorial(static_cast<unsigned>(j)) * stirling2(static_cast<unsigned>(k),
                                                                   static_cast<unsigned>(j)) *
                  bpow(s - 1, static_cast<unsigned>(j - i)) * binomial(n - i, j - i));
    term /= Rational(bpow(s, static_cast<unsigned>(j)));
    acc += term;
  }
  acc.canonicalize();
  return i % 2 ? Rational(-acc) : acc;
}

Rational c_coeff(int t, int i, int n, int s) {
  if (i < 0 || i > t) return 0;
  Rational acc = 0;
  for (int k = 0; k <= t; ++k) {
    Rational term = q_coeff(k, i, n, s) * Rational(binomial(t, k) * bpow(n, static_cast<unsigned>(t - k)));
    if (k % 2) acc -= term;
    else acc += term;
  }
  acc *= s - 1;
  acc.canonicalize();
  return acc;
}

CoefficientTable::CoefficientTable(int n, int s, int t_max) : n_(n), s_(s), t_max_(t_max) {
  z_.resize(idx(t_max + 1, 0));
  // Q_k(i) for all k, i <= t_max, computed once.
  std::vector<std::vector<Rational>> q(static_cast<std::size_t>(t_max + 1));
  for (int k = 0; k <= t_max; ++k) {
    for (int i = 0; i <= k; ++i) q[static_cast<std::size_t>(k)].push_back(q_coeff(k, i, n, s));
  }
  for (int t = 0; t <= t_max; ++t) {
    const BigInt st = bpow(s, static_cast<unsigned>(t));
    for (int i = 0; i <= t; ++i) {
      Rational acc = 0;
      for (int k = i; k <= t; ++k) {
        Rational term = q[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                        Rational(binomial(t, k) * bpow(n, static_cast<unsigned>(t - k)));
        if (k % 2) acc -= term;
        else acc += term;
      }
      // c_t(i) = (s-1) acc; z(t,0) drops the (s-1) factor.
      if (i > 0) acc *= s - 1;
      acc *= Rational(st);
      acc.canonicalize();
      if (acc.get_den() != 1) {
        throw Error(Errc::NonIntegralPattern, "scaled coefficient is not integral");
      }
      z_[idx(t, i)] = acc.get_num();
    }
  }
}

std::shared_ptr<const CoefficientTable> CoefficientTable::get(int n, int s, int t_max) {
  static std::shared_mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const CoefficientTable>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find({n, s});
    if (it != cache.end() && it->second->t_max() >= t_max) return it->second;
  }
  auto table = std::make_shared<const CoefficientTable>(n, s, std::max(t_max, n));
  std::unique_lock lock(mu);
  auto& slot = cache[{n, s}];
  if (!slot || slot->t_max() < table->t_max()) slot = table;
  return slot;
}

// ---------------------------------------------------------------------------
// Coincidences and moments

std::uint64_t CoincidenceProfile::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto h : histogram) sum += h;
  return sum;
}

CoincidenceProfile coincidence_profile(const DesignRows& rows, ProfileReference ref) {
  const std::size_t n = rows.n();
  CoincidenceProfile prof{ref, std::vector<std::uint64_t>(n + 1, 0)};
  if (ref == ProfileReference::NullRow) {
    if (!rows.has_zero_row()) {
      throw Error(Errc::MissingZeroRow, "null-row profile needs the all-zero row");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto r = rows.row(i);
      const auto zeros = static_cast<std::size_t>(std::count(r.begin(), r.end(), Elem{0}));
      ++prof.histogram[zeros];
    }
    return prof;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto a = rows.row(i);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      auto b = rows.row(j);
      std::size_t d = 0;
      for (std::size_t c = 0; c < n; ++c) d += a[c] == b[c];
      ++prof.histogram[d];
    }
  }
  return prof;
}

CoincidenceProfile null_row_profile(const ProjectiveSpace& ps, std::span<const Label> labels) {
  CoincidenceProfile prof{ProfileReference::NullRow,
                          std::vector<std::uint64_t>(labels.size() + 1, 0)};
  for (std::size_t u = 0; u < ps.num_messages(); ++u) {
    std::size_t zeros = 0;
    for (Label l : labels) zeros += ps.dot(u, l) == 0;
    ++prof.histogram[zeros];
  }
  return prof;
}

CoincidenceProfile principal_null_row_profile(const ProjectiveSpace& ps,
                                              std::span<const Label> labels,
                                              std::span<const Label> block_generators) {
  CoincidenceProfile prof{ProfileReference::NullRow,
                          std::vector<std::uint64_t>(labels.size() + 1, 0)};
  for (std::size_t u = 0; u < ps.num_messages(); ++u) {
    bool in_block = true;
    for (Label b : block_generators) {
      if (ps.dot(u, b) != 0) {
        in_block = false;
        break;
      }
    }
    if (!in_block) continue;
    std::size_t zeros = 0;
    for (Label l : labels) zeros += ps.dot(u, l) == 0;
    ++prof.histogram[zeros];
  }
  return prof;
}

std::vector<BigInt> power_sums(const CoincidenceProfile& profile, int t_max) {
  const auto& h = profile.histogram;
  std::vector<BigInt> out(static_cast<std::size_t>(t_max + 1), 0);
  // Small designs stay in 128-bit arithmetic; fall back to GMP on overflow.
  using u128 = unsigned __int128;
  const std::size_t n = h.empty() ? 0 : h.size() - 1;
  const u128 limit = ~u128{0} / 2;
  std::vector<u128> pw(h.size(), 1);
  bool fast = true;
  for (int t = 0; t <= t_max && fast; ++t) {
    u128 acc = 0;
    for (std::size_t d = 0; d <= n; ++d) {
      if (t > 0) {
        if (d != 0 && pw[d] > limit / d) {
          fast = false;
          break;
        }
        pw[d] *= d;
      }
      if (h[d] == 0) continue;
      const u128 term = pw[d] * h[d];
      if (h[d] != 0 && term / h[d] != pw[d]) {
        fast = false;
        break;
      }
      acc += term;
      if (acc > limit) {
        fast = false;
        break;
      }
    }
    if (!fast) break;
    const auto hi = static_cast<std::uint64_t>(acc >> 64);
    const auto lo = static_cast<std::uint64_t>(acc);
    BigInt v = hi;
    v <<= 64;
    v += BigInt(std::to_string(lo));
    out[static_cast<std::size_t>(t)] = v;
  }
  if (fast) return out;
  for (int t = 0; t <= t_max; ++t) {
    BigInt acc = 0;
    for (std::size_t d = 0; d <= n; ++d) {
      if (h[d] == 0) continue;
      acc += bpow(static_cast<long>(d), static_cast<unsigned>(t)) * BigInt(std::to_string(h[d]));
    }
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

MomentVector moments_from_profile(const CoincidenceProfile& profile, int t_max, MomentKind kind) {
  const auto sums = power_sums(profile, t_max);
  const Rational denom(BigInt(std::to_string(profile.total())));
  MomentVector mv{kind, {}};
  mv.values.reserve(sums.size());
  for (const auto& p : sums) {
    Rational v = Rational(p) / denom;
    v.canonicalize();
    mv.values.push_back(v);
  }
  return mv;
}

MomentVector moments_k0(const TreatmentSpec& t, int t_max) {
  const auto ps = ProjectiveSpace::get(t.s(), t.m());
  const auto labels = t.labels();
  return moments_from_profile(null_row_profile(*ps, labels), t_max, MomentKind::Treatment);
}

MomentVector principal_block_moments(const TreatmentSpec& t, const BlockScheme& b, int t_max) {
  if (t.s() != b.s() || t.m() != b.m()) {
    throw Error(Errc::InvalidDesign, "treatment and block live in different spaces");
  }
  const auto ps = ProjectiveSpace::get(t.s(), t.m());
  const auto labels = t.labels();
  const auto gens = b.labels();
  return moments_from_profile(principal_null_row_profile(*ps, labels, gens), t_max,
                              MomentKind::PrincipalBlock);
}

MomentVector moments_k1(const TreatmentSpec& t, const BlockScheme& b, int t_max) {
  if (!is_rme(t, b)) throw Error(Errc::NotRME, "blocking scheme is not RME for this design");
  const MomentVector k0 = moments_k0(t, t_max);
  const MomentVector d1 = principal_block_moments(t, b, t_max);
  const Rational lp1(BigInt(std::to_string(num_points(t.s(), b.p() - 1))));
  MomentVector out{MomentKind::Block, {}};
  for (int i = 0; i <= t_max; ++i) {
    Rational v = lp1 * k0[static_cast<std::size_t>(i)] + d1[static_cast<std::size_t>(i)] / t.s();
    v.canonicalize();
    out.values.push_back(v);
  }
  return out;
}

MomentVector moments_k1_all_pairs(const TreatmentSpec& t, const BlockScheme& b, int t_max) {
  const DesignRows dt = expand_design(t);
  const Flat f = expand_flat(b);
  // Rows of D_F are indexed by the same message counter as D_T.
  const auto ps = ProjectiveSpace::get(t.s(), t.m());
  const auto flabels = f.labels();
  const std::size_t nn = dt.size();
  std::vector<BigInt> sums(static_cast<std::size_t>(t_max + 1), 0);
  const std::size_t n = t.n();
  // Joint histogram of (delta_T, delta_F) over ordered pairs.
  std::vector<std::uint64_t> joint((n + 1) * (flabels.size() + 1), 0);
  for (std::size_t i = 0; i < nn; ++i) {
    auto a = dt.row(i);
    for (std::size_t j = 0; j < nn; ++j) {
      auto c = dt.row(j);
      std::size_t dT = 0;
      for (std::size_t x = 0; x < n; ++x) dT += a[x] == c[x];
      std::size_t dF = 0;
      for (Label l : flabels) dF += ps->dot(i, l) == ps->dot(j, l);
      ++joint[dT * (flabels.size() + 1) + dF];
    }
  }
  for (std::size_t dT = 0; dT <= n; ++dT) {
    for (std::size_t dF = 0; dF <= flabels.size(); ++dF) {
      const auto cnt = joint[dT * (flabels.size() + 1) + dF];
      if (!cnt) continue;
      const BigInt w = BigInt(std::to_string(cnt)) * static_cast<unsigned long>(dF);
      for (int tt = 0; tt <= t_max; ++tt) {
        sums[static_cast<std::size_t>(tt)] +=
            w * bpow(static_cast<long>(dT), static_cast<unsigned>(tt));
      }
    }
  }
  const Rational denom(BigInt(std::to_string(nn)) * BigInt(std::to_string(nn)));
  MomentVector out{MomentKind::Block, {}};
  for (auto& sm : sums) {
    Rational v = Rational(sm) / denom;
    v.canonicalize();
    out.values.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wordlength patterns

WordLengthPattern wlp_from_moments(const MomentVector& k0, int n, int s) {
  if (k0.t_max() < n) throw Error(Errc::OutOfRange, "moments must reach t = n");
  const auto tab = CoefficientTable::get(n, s, n);
  WordLengthPattern w;
  w.a0.assign(static_cast<std::size_t>(n + 1), 0);
  w.a0[0] = 1;
  for (int t = 1; t <= n; ++t) {
    Rational rhs = k0[static_cast<std::size_t>(t)] * Rational(bpow(s, static_cast<unsigned>(t)));
    rhs -= Rational(tab->z(t, 0));
    for (int i = 1; i < t; ++i) rhs -= Rational(tab->z(t, i) * w.a0[static_cast<std::size_t>(i)]);
    rhs /= Rational(tab->z(t, t));
    rhs.canonicalize();
    if (rhs.get_den() != 1 || sgn(rhs) < 0) {
      throw Error(Errc::NonIntegralPattern,
                  "treatment entry at length " + std::to_string(t) + " is " + rhs.get_str());
    }
    w.a0[static_cast<std::size_t>(t)] = rhs.get_num();
  }
  return w;
}

WordLengthPattern blocked_wlp_from_moments(const WordLengthPattern& wlp, const MomentVector& k1,
                                           int n, int s, int p) {
  if (k1.t_max() < n) throw Error(Errc::OutOfRange, "moments must reach t = n");
  if (wlp.n() != static_cast<std::size_t>(n)) {
    throw Error(Errc::InvalidDesign, "treatment pattern has the wrong length");
  }
  const auto tab = CoefficientTable::get(n, s, n);
  const BigInt lp = BigInt(std::to_string(num_points(s, p)));
  WordLengthPattern w = wlp;
  w.a1.assign(static_cast<std::size_t>(n + 1), 0);
  std::vector<BigInt> g(static_cast<std::size_t>(n + 1), 0);
  for (int t = 1; t <= n; ++t) {
    Rational rhs =
        k1[static_cast<std::size_t>(t)] * Rational(bpow(s, static_cast<unsigned>(t + 1)));
    rhs -= Rational(lp * tab->z(t, 0));
    for (int i = 1; i < t; ++i) rhs -= Rational(tab->z(t, i) * g[static_cast<std::size_t>(i)]);
    rhs /= Rational(tab->z(t, t));
    rhs.canonicalize();
    if (rhs.get_den() != 1) {
      throw Error(Errc::NonIntegralPattern,
                  "block entry at length " + std::to_string(t) + " is " + rhs.get_str());
    }
    g[static_cast<std::size_t>(t)] = rhs.get_num();
    const BigInt a = g[static_cast<std::size_t>(t)] - lp * w.a0[static_cast<std::size_t>(t)];
    if (sgn(a) < 0) {
      throw Error(Errc::NonIntegralPattern,
                  "block entry at length " + std::to_string(t) + " is negative");
    }
    w.a1[static_cast<std::size_t>(t)] = a;
  }
  return w;
}

WordLengthPattern wlp_from_power_sums(std::span<const BigInt> treatment, int n, int s, int m) {
  if (treatment.size() < static_cast<std::size_t>(n + 1)) {
    throw Error(Errc::OutOfRange, "power sums must reach t = n");
  }
  const auto tab = CoefficientTable::get(n, s, n);
  const BigInt sm = bpow(s, static_cast<unsigned>(m));
  WordLengthPattern w;
  w.a0.assign(static_cast<std::size_t>(n + 1), 0);
  w.a0[0] = 1;
  BigInt st = 1;
  BigInt num;
  BigInt den;
  for (int t = 1; t <= n; ++t) {
    st *= s;
    // s^t P_t = s^m (z(t,0) + sum_{i<t} z(t,i) A_i + z(t,t) A_t).
    BigInt acc = tab->z(t, 0);
    for (int i = 1; i < t; ++i) {
      const auto& a = w.a0[static_cast<std::size_t>(i)];
      if (sgn(a)) acc += tab->z(t, i) * a;
    }
    num = st * treatment[static_cast<std::size_t>(t)] - sm * acc;
    den = sm * tab->z(t, t);
    require_divisible(num, den, w.a0[static_cast<std::size_t>(t)], t, "treatment");
  }
  return w;
}

WordLengthPattern blocked_wlp_from_power_sums(std::span<const BigInt> treatment,
                                              std::span<const BigInt> principal, int n, int s,
                                              int m, int p) {
  WordLengthPattern w = wlp_from_power_sums(treatment, n, s, m);
  add_block_part_from_power_sums(w, treatment, principal, s, m, p);
  return w;
}

void add_block_part_from_power_sums(WordLengthPattern& w, std::span<const BigInt> treatment,
                                    std::span<const BigInt> principal, int s, int m, int p) {
  const int n = static_cast<int>(w.n());
  if (principal.size() < static_cast<std::size_t>(n + 1) ||
      treatment.size() < static_cast<std::size_t>(n + 1)) {
    throw Error(Errc::OutOfRange, "power sums must reach t = n");
  }
  const auto tab = CoefficientTable::get(n, s, n);
  const BigInt sm = bpow(s, static_cast<unsigned>(m));
  const BigInt sp = bpow(s, static_cast<unsigned>(p));
  const BigInt lp = BigInt(std::to_string(num_points(s, p)));
  const BigInt lp1 = BigInt(std::to_string(num_points(s, p - 1)));
  w.a1.assign(static_cast<std::size_t>(n + 1), 0);
  std::vector<BigInt> g(static_cast<std::size_t>(n + 1), 0);
  BigInt st = 1;
  BigInt num;
  BigInt den;
  for (int t = 1; t <= n; ++t) {
    st *= s;
    // s^{m+t+1} K_{t,1} = s^{t+1} L_{p-1} P_t + s^{t+p} P_t(D_1).
    BigInt r = st * s * lp1 * treatment[static_cast<std::size_t>(t)] +
               st * sp * principal[static_cast<std::size_t>(t)];
    BigInt acc = lp * tab->z(t, 0);
    for (int i = 1; i < t; ++i) {
      const auto& gi = g[static_cast<std::size_t>(i)];
      if (sgn(gi)) acc += tab->z(t, i) * gi;
    }
    num = r - sm * acc;
    den = sm * tab->z(t, t);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
      throw Error(Errc::NonIntegralPattern,
                  "block entry at length " + std::to_string(t) + " is not an integer");
    }
    mpz_divexact(g[static_cast<std::size_t>(t)].get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt a = g[static_cast<std::size_t>(t)] - lp * w.a0[static_cast<std::size_t>(t)];
    if (sgn(a) < 0) {
      throw Error(Errc::NonIntegralPattern,
                  "block entry at length " + std::to_string(t) + " is negative");
    }
    w.a1[static_cast<std::size_t>(t)] = a;
  }
}

WordLengthPattern compute_wlp(const TreatmentSpec& t) {
  const auto ps = ProjectiveSpace::get(t.s(), t.m());
  const auto labels = t.labels();
  const int n = static_cast<int>(t.n());
  const auto sums = power_sums(null_row_profile(*ps, labels), n);
  return wlp_from_power_sums(sums, n, t.s(), t.m());
}

WordLengthPattern compute_blocked_wlp(const TreatmentSpec& t, const BlockScheme& b) {
  if (!is_rme(t, b)) throw Error(Errc::NotRME, "blocking scheme is not RME for this design");
  const auto ps = ProjectiveSpace::get(t.s(), t.m());
  const auto labels = t.labels();
  const auto gens = b.labels();
  const int n = static_cast<int>(t.n());
  const auto p0 = power_sums(null_row_profile(*ps, labels), n);
  const auto p1 = power_sums(principal_null_row_profile(*ps, labels, gens), n);
  return blocked_wlp_from_power_sums(p0, p1, n, t.s(), t.m(), b.p());
}

// ---------------------------------------------------------------------------
// Oracles

EnumerationLimits EnumerationLimits::from_env() {
  EnumerationLimits lim;
  if (const char* v = std::getenv("MABD_MAX_DUAL_WORDS")) {
    lim.max_words = std::strtoull(v, nullptr, 10);
  }
  return lim;
}

std::size_t Word::weight() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs.begin(), coeffs.end(), [](Elem e) { return e != 0; }));
}

namespace {

// Index of a vector of V_m as a base-s number, coordinate 0 least significant.
std::size_t vector_index(std::span<const Elem> v, int s) {
  std::size_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * static_cast<std::size_t>(s) + v[i];
  return idx;
}

// in_span[idx] for every vector of V_m; the zero vector is included.
std::vector<bool> span_table(const BlockScheme* b, int s, int m) {
  const auto total = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(m));
  std::vector<bool> table(total, false);
  table[0] = true;
  if (!b) return table;
  const PrimeField f(s);
  const FieldMatrix bm = b->matrix();
  const auto combos = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(b->p()));
  for (std::uint64_t c = 0; c < combos; ++c) {
    const FieldVector mu = message_vector(c, s, b->p());
    FieldVector v(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) v[static_cast<std::size_t>(r)] = f.dot(bm.row(static_cast<std::size_t>(r)), mu);
    table[vector_index(v, s)] = true;
  }
  return table;
}

std::uint64_t support_candidates(std::size_t n, int s, int max_weight) {
  long double total = 0;
  for (int w = 1; w <= max_weight && w <= static_cast<int>(n); ++w) {
    long double c = 1;
    for (int i = 0; i < w; ++i) c = c * static_cast<long double>(n - static_cast<std::size_t>(i)) / (i + 1);
    for (int i = 1; i < w; ++i) c *= s - 1;
    total += c;
  }
  return total > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

// Calls fn(coeffs, vector_index(T c)) for every normalized c of weight in
// [1, max_weight].
template <class Fn>
void for_each_low_weight(const TreatmentSpec& t, int max_weight, Fn&& fn) {
  const int s = t.s();
  const int m = t.m();
  const std::size_t n = t.n();
  const PrimeField f(s);
  const auto& cols = t.columns();
  FieldVector coeffs(n, 0);
  std::vector<std::size_t> support;
  FieldVector acc(static_cast<std::size_t>(m), 0);
  // Depth-first over increasing supports; the first coefficient is 1.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!support.empty()) fn(coeffs, vector_index(acc, s));
    if (static_cast<int>(support.size()) == max_weight) return;
    for (std::size_t j = start; j < n; ++j) {
      const int lo = 1;
      const int hi = support.empty() ? 1 : s - 1;
      for (int a = lo; a <= hi; ++a) {
        coeffs[j] = static_cast<Elem>(a);
        support.push_back(j);
        for (int r = 0; r < m; ++r) {
          auto& x = acc[static_cast<std::size_t>(r)];
          x = f.add(x, f.mul(static_cast<Elem>(a), cols[j][static_cast<std::size_t>(r)]));
        }
        self(self, j + 1);
        for (int r = 0; r < m; ++r) {
          auto& x = acc[static_cast<std::size_t>(r)];
          x = f.sub(x, f.mul(static_cast<Elem>(a), cols[j][static_cast<std::size_t>(r)]));
        }
        support.pop_back();
        coeffs[j] = 0;
      }
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Word> low_weight_words(const TreatmentSpec& t, const BlockScheme* b, int max_weight,
                                   EnumerationLimits limits) {
  if (b && (b->s() != t.s() || b->m() != t.m())) {
    throw Error(Errc::InvalidDesign, "treatment and block live in different spaces");
  }
  if (support_candidates(t.n(), t.s(), max_weight) > limits.max_words) {
    throw Error(Errc::TooLarge, "low-weight word enumeration exceeds the candidate guard");
  }
  const auto in_span = span_table(b, t.s(), t.m());
  std::vector<Word> out;
  for_each_low_weight(t, max_weight, [&](const FieldVector& c, std::size_t idx) {
    if (idx == 0) out.push_back(Word{c, false});
    else if (b && in_span[idx]) out.push_back(Word{c, true});
  });
  return out;
}

WordLengthPattern dual_word_enumeration(const TreatmentSpec& t, const BlockScheme* b,
                                        std::optional<int> max_weight, EnumerationLimits limits) {
  const int s = t.s();
  const int m = t.m();
  const std::size_t n = t.n();
  if (b && (b->s() != s || b->m() != m)) {
    throw Error(Errc::InvalidDesign, "treatment and block live in different spaces");
  }
  const int p = b ? b->p() : 0;
  const int wmax = max_weight ? std::min<int>(*max_weight, static_cast<int>(n)) : static_cast<int>(n);

  WordLengthPattern w;
  w.a0.assign(n + 1, 0);
  w.a0[0] = 1;
  if (b) w.a1.assign(n + 1, 0);

  const int dual_dim = static_cast<int>(n) - m + p;
  const long double full_count = std::pow(static_cast<long double>(s), dual_dim);
  const std::uint64_t support_count = support_candidates(n, s, wmax);

  if (max_weight && support_count <= full_count) {
    if (support_count > limits.max_words) {
      throw Error(Errc::TooLarge, "dual enumeration exceeds the candidate guard");
    }
    const auto in_span = span_table(b, s, m);
    std::vector<std::uint64_t> c0(n + 1, 0);
    std::vector<std::uint64_t> c1(n + 1, 0);
    for_each_low_weight(t, wmax, [&](const FieldVector& c, std::size_t idx) {
      const std::size_t wt = static_cast<std::size_t>(
          std::count_if(c.begin(), c.end(), [](Elem e) { return e != 0; }));
      if (idx == 0) ++c0[wt];
      else if (b && in_span[idx]) ++c1[wt];
    });
    for (std::size_t i = 1; i <= n; ++i) {
      w.a0[i] = BigInt(std::to_string(c0[i]));
      if (b) w.a1[i] = BigInt(std::to_string(c1[i]));
    }
    return w;
  }

  if (full_count > static_cast<long double>(limits.max_words)) {
    throw Error(Errc::TooLarge, "dual enumeration of " + std::to_string(s) + "^" +
                                    std::to_string(dual_dim) + " words exceeds the guard");
  }
  // Null space of [T | -B]: pairs (c, mu) with T c = B mu.
  const PrimeField f(s);
  FieldMatrix big(f, static_cast<std::size_t>(m), n + static_cast<std::size_t>(p));
  const FieldMatrix tm = t.generator();
  for (int r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) big.at(static_cast<std::size_t>(r), c) = tm.at(static_cast<std::size_t>(r), c);
  }
  if (b) {
    const FieldMatrix bm = b->matrix();
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < p; ++c) {
        big.at(static_cast<std::size_t>(r), n + static_cast<std::size_t>(c)) =
            f.neg(bm.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
      }
    }
  }
  const FieldMatrix basis = null_space(big);
  const std::size_t dim = basis.rows();
  const std::size_t width = n + static_cast<std::size_t>(p);
  std::vector<unsigned> digits(dim, 0);
  FieldVector x(width, 0);
  std::vector<std::uint64_t> c0(n + 1, 0);
  std::vector<std::uint64_t> c1(n + 1, 0);
  // Odometer: every digit touched by an increment adds its basis row once,
  // since s copies of a row sum to zero.
  while (true) {
    std::size_t i = 0;
    for (; i < dim; ++i) {
      auto row = basis.row(i);
      for (std::size_t c = 0; c < width; ++c) x[c] = f.add(x[c], row[c]);
      if (++digits[i] < static_cast<unsigned>(s)) break;
      digits[i] = 0;
    }
    if (i == dim) break;  // wrapped to zero
    std::size_t wt = 0;
    for (std::size_t c = 0; c < n; ++c) wt += x[c] != 0;
    if (wt == 0 || static_cast<int>(wt) > wmax) continue;
    bool treatment = true;
    for (std::size_t c = n; c < width; ++c) treatment = treatment && x[c] == 0;
    if (treatment) ++c0[wt];
    else ++c1[wt];
  }
  const auto sm1 = static_cast<std::uint64_t>(s - 1);
  for (std::size_t i = 1; i <= n; ++i) {
    w.a0[i] = BigInt(std::to_string(c0[i] / sm1));
    if (b) w.a1[i] = BigInt(std::to_string(c1[i] / sm1));
  }
  return w;
}

SplitWeightDistribution split_weight_distribution(const FieldMatrix& g, std::size_t n1,
                                                  EnumerationLimits limits) {
  const int s = g.field().order();
  const std::size_t r = g.rows();
  const std::size_t n = g.cols();
  if (n1 > n) throw Error(Errc::OutOfRange, "split point beyond code length");
  const long double count = std::pow(static_cast<long double>(s), static_cast<long double>(r));
  if (count > static_cast<long double>(limits.max_words)) {
    throw Error(Errc::TooLarge, "split weight enumeration exceeds the guard");
  }
  const PrimeField& f = g.field();
  std::map<std::pair<int, int>, std::uint64_t> counts;
  std::vector<unsigned> digits(r, 0);
  FieldVector x(n, 0);
  counts[{0, 0}] = 1;
  while (true) {
    std::size_t i = 0;
    for (; i < r; ++i) {
      auto row = g.row(i);
      for (std::size_t c = 0; c < n; ++c) x[c] = f.add(x[c], row[c]);
      if (++digits[i] < static_cast<unsigned>(s)) break;
      digits[i] = 0;
    }
    if (i == r) break;
    int w1 = 0;
    int w2 = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (x[c] == 0) continue;
      if (c < n1) ++w1;
      else ++w2;
    }
    ++counts[{w1, w2}];
  }
  SplitWeightDistribution out;
  for (auto& [k, v] : counts) out[k] = BigInt(std::to_string(v));
  return out;
}

std::pair<Rational, Rational> pless_identity_check(const FieldMatrix& g, std::size_t n1, int k1,
                                                   int k2, EnumerationLimits limits) {
  const int s = g.field().order();
  const std::size_t n = g.cols();
  const std::size_t n2 = n - n1;
  const std::size_t m = rank(g);
  if (m != g.rows()) throw Error(Errc::InvalidDesign, "generator rows are dependent");
  const auto bd = split_weight_distribution(g, n1, limits);
  const auto dual = null_space(g);
  const SplitWeightDistribution bperp =
      dual.rows() ? split_weight_distribution(dual, n1, limits)
                  : SplitWeightDistribution{{{0, 0}, BigInt(1)}};
  Rational lhs = 0;
  for (const auto& [k, v] : bd) {
    lhs += Rational(v * bpow(k.first, static_cast<unsigned>(k1)) *
                    bpow(k.second, static_cast<unsigned>(k2)));
  }
  lhs /= Rational(bpow(s, static_cast<unsigned>(m)));
  lhs.canonicalize();
  Rational rhs = 0;
  for (const auto& [k, v] : bperp) {
    rhs += Rational(v) * q_coeff(k1, k.first, static_cast<int>(n1), s) *
           q_coeff(k2, k.second, static_cast<int>(n2), s);
  }
  rhs.canonicalize();
  return {lhs, rhs};
}

MomentVector unblocked_moments_via_lemma5(const MomentVector& k0, const MomentVector& k1, int p,
                                          int s, int t_max) {
  if (k0.t_max() < t_max || k1.t_max() < t_max) {
    throw Error(Errc::OutOfRange, "moments must reach t_max");
  }
  const Rational lp(BigInt(std::to_string(num_points(s, p))));
  const Rational lq(BigInt(std::to_string(num_points(s, p - 1))));
  const Rational scale(BigInt(1), bpow(s, static_cast<unsigned>(p - 1)));
  MomentVector out{MomentKind::Unblocked, {}};
  for (int t = 0; t <= t_max; ++t) {
    Rational v = k0[static_cast<std::size_t>(t)];
    if (t >= 1) v += Rational(t) * k1[static_cast<std::size_t>(t - 1)];
    Rational tail = 0;
    for (int r = 2; r <= t; ++r) {
      const auto ur = static_cast<unsigned>(r);
      Rational term = (rpow(lp, ur) - rpow(lq, ur)) * k1[static_cast<std::size_t>(t - r)];
      term -= lp * lq * (rpow(lp, ur - 1) - rpow(lq, ur - 1)) * k0[static_cast<std::size_t>(t - r)];
      tail += Rational(binomial(t, r)) * term;
    }
    v += scale * tail;
    v.canonicalize();
    out.values.push_back(v);
  }
  return out;
}

}  // namespace mabd
