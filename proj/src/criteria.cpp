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

#include "mabd/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>

namespace mabd {

const char* to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::WSCF: return "WSCF";
    case Criterion::WCC: return "WCC";
    case Criterion::W1: return "W1";
    case Criterion::W2: return "W2";
  }
  return "?";
}

Criterion parse_criterion(const std::string& name) {
  std::string u;
  for (char ch : name) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (u == "WSCF") return Criterion::WSCF;
  if (u == "WCC") return Criterion::WCC;
  if (u == "W1") return Criterion::W1;
  if (u == "W2") return Criterion::W2;
  throw Error(Errc::Parse, "unknown criterion '" + name + "' (wscf, wcc, w1, w2)");
}

CombinedPattern combined_pattern(const WordLengthPattern& w, Criterion c) {
  const std::size_t n = w.n();
  CombinedPattern out{c, n, {}};
  auto& t = out.terms;
  switch (c) {
    case Criterion::WSCF:
      for (std::size_t i = 3; i <= n; ++i) {
        t.push_back(w.treatment(i));
        t.push_back(w.block(i - 1));
      }
      if (n >= 2) t.push_back(w.block(n));
      break;
    case Criterion::WCC:
      for (std::size_t i = 2; i <= n; ++i) {
        BigInt coef;
        mpz_bin_uiui(coef.get_mpz_t(), 2 * i - 1, i);
        t.push_back(coef * w.treatment(2 * i - 1) + w.block(i));
        if (2 * i <= n) t.push_back(w.treatment(2 * i));
      }
      break;
    case Criterion::W1:
    case Criterion::W2:
      for (std::size_t i = 2; i <= n; ++i) {
        const bool odd = 2 * i - 1 <= n;
        const bool even = 2 * i <= n;
        if (odd) t.push_back(w.treatment(2 * i - 1));
        if (c == Criterion::W1) {
          if (even) t.push_back(w.treatment(2 * i));
          t.push_back(w.block(i));
        } else {
          t.push_back(w.block(i));
          if (even) t.push_back(w.treatment(2 * i));
        }
      }
      break;
  }
  return out;
}

std::strong_ordering compare(const CombinedPattern& a, const CombinedPattern& b) {
  if (a.criterion != b.criterion || a.n != b.n || a.terms.size() != b.terms.size()) {
    throw Error(Errc::CriterionMismatch, std::string("cannot compare ") + to_string(a.criterion) +
                                             " (n=" + std::to_string(a.n) + ") with " +
                                             to_string(b.criterion) + " (n=" + std::to_string(b.n) + ")");
  }
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const int r = cmp(a.terms[i], b.terms[i]);
    if (r < 0) return std::strong_ordering::less;
    if (r > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Clear effects

const char* to_string(PairClearRule r) noexcept {
  return r == PairClearRule::AnyComponent ? "any" : "all";
}

PairClearRule parse_pair_clear_rule(const std::string& name) {
  if (name == "any") return PairClearRule::AnyComponent;
  if (name == "all") return PairClearRule::AllComponents;
  throw Error(Errc::Parse, "unknown pair rule '" + name + "' (any, all)");
}

namespace {

struct Sparse {
  std::vector<std::pair<std::size_t, Elem>> entries;  // sorted by index
};

// Weight of v + e W, with v of weight <= 2.
std::size_t sum_weight(const Sparse& v, const Sparse& w, Elem e, const PrimeField& f) {
  std::size_t wt = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < v.entries.size() || j < w.entries.size()) {
    if (j == w.entries.size() || (i < v.entries.size() && v.entries[i].first < w.entries[j].first)) {
      ++wt;
      ++i;
    } else if (i == v.entries.size() || w.entries[j].first < v.entries[i].first) {
      ++wt;
      ++j;
    } else {
      wt += f.add(v.entries[i].second, f.mul(e, w.entries[j].second)) != 0;
      ++i;
      ++j;
    }
  }
  return wt;
}

}  // namespace

ClearCounts clear_counts(const TreatmentSpec& t, const BlockScheme& b, PairClearRule rule) {
  if (!is_rme(t, b)) throw Error(Errc::NotRME, "clear effects need an RME scheme");
  const int s = t.s();
  const int m = t.m();
  const std::size_t n = t.n();
  const PrimeField& f = t.field();

  std::vector<Sparse> words;
  for (const Word& w : low_weight_words(t, nullptr, 4)) {
    Sparse sp;
    for (std::size_t i = 0; i < n; ++i) {
      if (w.coeffs[i]) sp.entries.emplace_back(i, w.coeffs[i]);
    }
    words.push_back(std::move(sp));
  }
  // Words touching each factor; aliasing of v needs a shared factor.
  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t k = 0; k < words.size(); ++k) {
    for (auto& [i, c] : words[k].entries) touching[i].push_back(k);
  }

  const Flat flat = expand_flat(b);
  const auto& cols = t.columns();

  auto aliased = [&](const Sparse& v) {
    for (auto& [idx, c] : v.entries) {
      for (std::size_t k : touching[idx]) {
        for (int e = 1; e < s; ++e) {
          if (sum_weight(v, words[k], static_cast<Elem>(e), f) <= 2) return true;
        }
      }
    }
    return false;
  };
  auto confounded = [&](const Sparse& v) {
    FieldVector x(static_cast<std::size_t>(m), 0);
    for (auto& [idx, c] : v.entries) {
      for (int r = 0; r < m; ++r) {
        auto& xr = x[static_cast<std::size_t>(r)];
        xr = f.add(xr, f.mul(c, cols[idx][static_cast<std::size_t>(r)]));
      }
    }
    if (std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; })) return false;
    return flat.contains(PGPoint(s, x));
  };
  auto clear = [&](const Sparse& v) { return !aliased(v) && !confounded(v); };

  ClearCounts out;
  for (std::size_t i = 0; i < n; ++i) {
    if (clear(Sparse{{{i, Elem{1}}}})) ++out.c1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int clear_components = 0;
      for (int a = 1; a < s; ++a) {
        clear_components += clear(Sparse{{{i, Elem{1}}, {j, static_cast<Elem>(a)}}});
      }
      const bool ok = rule == PairClearRule::AnyComponent ? clear_components > 0
                                                          : clear_components == s - 1;
      out.c2 += ok;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Situations

const char* to_string(Situation s) noexcept {
  switch (s) {
    case Situation::AllSame: return "ALL_SAME";
    case Situation::S1: return "S1";
    case Situation::S2: return "S2";
    case Situation::S3: return "S3";
    case Situation::S4: return "S4";
    case Situation::Other: return "OTHER";
  }
  return "OTHER";
}

std::string pattern_signature(const WordLengthPattern& w) {
  std::string out = "t";
  for (std::size_t i = 1; i < w.a0.size(); ++i) out += ":" + w.a0[i].get_str();
  out += "|b";
  for (std::size_t i = 1; i < w.a1.size(); ++i) out += ":" + w.a1[i].get_str();
  return out;
}

Situation classify_situation(const std::map<Criterion, std::set<std::string>>& winners) {
  auto get = [&](Criterion c) -> const std::set<std::string>& {
    static const std::set<std::string> empty;
    auto it = winners.find(c);
    return it == winners.end() ? empty : it->second;
  };
  auto common = [&](std::initializer_list<Criterion> group) {
    std::set<std::string> acc = get(*group.begin());
    for (auto it = group.begin() + 1; it != group.end(); ++it) {
      std::set<std::string> next;
      const auto& other = get(*it);
      std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                            std::inserter(next, next.begin()));
      acc = std::move(next);
    }
    return acc;
  };
  auto disjoint = [&](const std::set<std::string>& a, Criterion c) {
    const auto& b = get(c);
    return std::none_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) > 0; });
  };
  using C = Criterion;
  if (!common({C::W1, C::W2, C::WSCF, C::WCC}).empty()) return Situation::AllSame;
  if (auto g = common({C::W1, C::W2, C::WCC}); !g.empty() && disjoint(g, C::WSCF)) return Situation::S1;
  if (auto g = common({C::W2, C::WSCF, C::WCC}); !g.empty() && disjoint(g, C::W1)) return Situation::S2;
  if (auto g = common({C::W1, C::W2, C::WSCF}); !g.empty() && disjoint(g, C::WCC)) return Situation::S3;
  if (auto g = common({C::W2, C::WCC}); !g.empty() && (disjoint(g, C::W1) || disjoint(g, C::WSCF))) {
    return Situation::S4;
  }
  return Situation::Other;
}

}  // namespace mabd
