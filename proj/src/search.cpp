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

#include "mabd/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

namespace mabd {

BigInt gaussian_binomial(int m, int p, int s) {
  if (p < 0 || p > m) return 0;
  BigInt num = 1;
  BigInt den = 1;
  BigInt sm;
  for (int i = 0; i < p; ++i) {
    BigInt a;
    BigInt b;
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(m - i));
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(i + 1));
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

namespace {

std::vector<Label> span_labels(const std::vector<FieldVector>& basis, int s, int m) {
  const PrimeField f(s);
  const int p = static_cast<int>(basis.size());
  const auto count = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(p));
  std::vector<Label> out;
  for (std::uint64_t c = 1; c < count; ++c) {
    const FieldVector lambda = message_vector(c, s, p);
    FieldVector v(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < p; ++i) {
      if (!lambda[static_cast<std::size_t>(i)]) continue;
      for (int r = 0; r < m; ++r) {
        auto& x = v[static_cast<std::size_t>(r)];
        x = f.add(x, f.mul(lambda[static_cast<std::size_t>(i)],
                           basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]));
      }
    }
    PGPoint pt(s, v);
    if (!pt.is_normalized()) continue;
    out.push_back(point_to_label(pt));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Flat> enumerate_flats(int m, int s, int p) {
  const PrimeField f(s);
  (void)f;
  if (p < 1 || p > m) throw Error(Errc::InvalidP, "flat dimension must satisfy 1 <= p <= m");
  std::vector<std::vector<Label>> found;
  // Reduced row-echelon p x m matrices: choose pivots, then fill the free
  // entries to the right of each pivot in non-pivot columns.
  std::vector<int> piv(static_cast<std::size_t>(p));
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    std::vector<bool> is_piv(static_cast<std::size_t>(m), false);
    for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
    std::vector<std::pair<int, int>> free;  // (row, col)
    for (int r = 0; r < p; ++r) {
      for (int c = piv[static_cast<std::size_t>(r)] + 1; c < m; ++c) {
        if (!is_piv[static_cast<std::size_t>(c)]) free.emplace_back(r, c);
      }
    }
    const auto fills = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(free.size()));
    for (std::uint64_t x = 0; x < fills; ++x) {
      const FieldVector vals = message_vector(x, s, static_cast<int>(free.size()));
      std::vector<FieldVector> basis(static_cast<std::size_t>(p), FieldVector(static_cast<std::size_t>(m), 0));
      for (int r = 0; r < p; ++r) {
        basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = 1;
      }
      for (std::size_t k = 0; k < free.size(); ++k) {
        basis[static_cast<std::size_t>(free[k].first)][static_cast<std::size_t>(free[k].second)] = vals[k];
      }
      found.push_back(span_labels(basis, s, m));
    }
    // Next pivot combination.
    int i = p - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == m - p + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < p; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<Flat> out;
  out.reserve(found.size());
  for (const auto& labels : found) {
    Flat fl{s, m, {}};
    for (Label l : labels) fl.points.push_back(label_to_point(l, s, m));
    out.push_back(std::move(fl));
  }
  return out;
}

BlockScheme scheme_from_flat(const Flat& fl) {
  const PrimeField field(fl.s);
  std::vector<PGPoint> kept;
  std::vector<FieldVector> cols;
  for (const auto& pt : fl.points) {
    cols.push_back(pt.coords());
    if (rank(FieldMatrix::from_columns(field, cols, static_cast<std::size_t>(fl.m))) == cols.size()) {
      kept.push_back(pt);
    } else {
      cols.pop_back();
    }
  }
  return BlockScheme(fl.s, fl.m, std::move(kept));
}

SearchLimits SearchLimits::from_env() {
  SearchLimits lim;
  if (const char* v = std::getenv("MABD_MAX_SUBSETS")) lim.max_subsets = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("MABD_MAX_DUAL_WORDS")) lim.max_dual_words = std::strtoull(v, nullptr, 10);
  return lim;
}

std::vector<CapStage> cap_schedule(int n, long a3_cap, int n_min) {
  std::vector<CapStage> out;
  long cap = std::max(0L, a3_cap);
  for (int j = n; j >= n_min; --j) {
    out.push_back({j, cap});
    if (j > 0) cap = std::max(0L, cap - (3 * cap + j - 1) / j);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

const char* to_string(TreatmentSource s) noexcept {
  switch (s) {
    case TreatmentSource::Fixed: return "fixed";
    case TreatmentSource::AllSubsets: return "all-subsets";
    case TreatmentSource::Extension: return "extension";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Treatment enumeration

namespace {

struct Profiled {
  std::vector<Label> labels;
  WordLengthPattern wlp;
  std::string signature;
};

// Treatment pattern plus, for every column j, the profile of rows with a
// zero in column j; the per-column profiles are sorted.
std::optional<Profiled> profile_design(const ProjectiveSpace& ps, std::vector<Label> labels) {
  const std::size_t n = labels.size();
  std::vector<std::size_t> zeros(ps.num_messages(), 0);
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (std::size_t u = 0; u < ps.num_messages(); ++u) {
    std::size_t z = 0;
    for (Label l : labels) z += ps.dot(u, l) == 0;
    zeros[u] = z;
    ++hist[z];
  }
  CoincidenceProfile prof{ProfileReference::NullRow, hist};
  WordLengthPattern w;
  try {
    w = wlp_from_power_sums(power_sums(prof, static_cast<int>(n)), static_cast<int>(n), ps.s(), ps.m());
  } catch (const Error&) {
    return std::nullopt;
  }
  std::vector<std::vector<std::uint64_t>> per_col(n, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t u = 0; u < ps.num_messages(); ++u) {
    for (std::size_t j = 0; j < n; ++j) {
      if (ps.dot(u, labels[j]) == 0) ++per_col[j][zeros[u]];
    }
  }
  std::sort(per_col.begin(), per_col.end());
  std::string sig = pattern_signature(w);
  for (const auto& c : per_col) {
    sig += '/';
    for (auto v : c) sig += std::to_string(v) + ',';
  }
  return Profiled{std::move(labels), std::move(w), std::move(sig)};
}

bool spans(const ProjectiveSpace& ps, const std::vector<Label>& labels) {
  std::vector<FieldVector> cols;
  for (Label l : labels) cols.push_back(ps.point(l).coords());
  return rank(FieldMatrix::from_columns(PrimeField(ps.s()), cols, static_cast<std::size_t>(ps.m()))) ==
         static_cast<std::size_t>(ps.m());
}

long double binom_ld(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  return r;
}

}  // namespace

std::vector<TreatmentSpec> enumerate_treatment_designs(int s, int m, int n,
                                                       std::optional<long> a3_cap,
                                                       SearchLimits limits,
                                                       EnumerationStats* stats) {
  return enumerate_treatment_designs(
      s, m, n, a3_cap ? TreatmentSource::Extension : TreatmentSource::AllSubsets, a3_cap, limits,
      stats);
}

std::vector<TreatmentSpec> enumerate_treatment_designs(int s, int m, int n, TreatmentSource source,
                                                       std::optional<long> a3_cap,
                                                       SearchLimits limits,
                                                       EnumerationStats* stats) {
  const PrimeField field(s);
  (void)field;
  if (n < m) throw Error(Errc::InvalidDesign, "need n >= m");
  const auto total_points = num_points(s, m);
  if (static_cast<std::uint64_t>(n) > total_points) {
    throw Error(Errc::InvalidDesign, "n exceeds the number of points of PG(m-1, s)");
  }
  const auto ps = ProjectiveSpace::get(s, m);
  EnumerationStats local;
  EnumerationStats& st = stats ? *stats : local;
  st = EnumerationStats{};
  std::vector<TreatmentSpec> out;
  std::unordered_set<std::string> seen;

  if (source == TreatmentSource::AllSubsets) {
    if (binom_ld(total_points, static_cast<std::uint64_t>(n)) > static_cast<long double>(limits.max_subsets)) {
      throw Error(Errc::TooLarge, "C(" + std::to_string(total_points) + ", " + std::to_string(n) +
                                      ") subsets exceed the subset guard (MABD_MAX_SUBSETS=" +
                                      std::to_string(limits.max_subsets) + ")");
    }
    std::vector<Label> comb(static_cast<std::size_t>(n));
    std::iota(comb.begin(), comb.end(), Label{1});
    const auto L = static_cast<Label>(total_points);
    while (true) {
      ++st.candidates;
      if (spans(*ps, comb)) {
        ++st.full_rank;
        if (auto pr = profile_design(*ps, comb); pr && seen.insert(pr->signature).second) {
          out.push_back(TreatmentSpec::from_labels(s, m, comb));
        }
      }
      int i = n - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == L - static_cast<Label>(n - 1 - i)) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    st.classes = out.size();
    return out;
  }

  if (source != TreatmentSource::Extension) {
    throw Error(Errc::InvalidDesign, "fixed designs are not enumerated");
  }
  std::vector<CapStage> schedule;
  if (a3_cap) schedule = cap_schedule(n, *a3_cap, m);
  st.schedule = schedule;
  auto cap_at = [&](int j) -> std::optional<long> {
    for (const auto& c : schedule) {
      if (c.n == j) return c.cap;
    }
    return std::nullopt;
  };
  std::vector<std::vector<Label>> layer;
  {
    std::vector<Label> base;
    for (int i = 0; i < m; ++i) base.push_back(static_cast<Label>(num_points(s, i) + 1));
    layer.push_back(base);
  }
  for (int j = m + 1; j <= n; ++j) {
    std::vector<std::vector<Label>> next;
    seen.clear();
    const auto cap = cap_at(j);
    for (const auto& parent : layer) {
      std::vector<bool> used(total_points + 1, false);
      for (Label l : parent) used[l] = true;
      for (Label l = 1; l <= total_points; ++l) {
        if (used[l]) continue;
        if (++st.candidates > limits.max_subsets) {
          throw Error(Errc::TooLarge, "extension candidates exceed the subset guard (MABD_MAX_SUBSETS=" +
                                          std::to_string(limits.max_subsets) + ")");
        }
        std::vector<Label> child = parent;
        child.push_back(l);
        ++st.full_rank;
        auto pr = profile_design(*ps, child);
        if (!pr) continue;
        if (cap && pr->wlp.treatment(3) > *cap) continue;
        if (seen.insert(pr->signature).second) next.push_back(std::move(child));
      }
    }
    layer = std::move(next);
  }
  for (const auto& labels : layer) out.push_back(TreatmentSpec::from_labels(s, m, labels));
  st.classes = out.size();
  return out;
}

// ---------------------------------------------------------------------------
// Blocked search

const CriterionResult& SearchResult::result(Criterion c) const {
  for (const auto& r : per_criterion) {
    if (r.criterion == c) return r;
  }
  throw Error(Errc::CriterionMismatch, std::string("criterion ") + to_string(c) + " was not searched");
}

namespace {

struct PreparedDesign {
  std::vector<Label> labels;
  std::vector<bool> used;
  std::vector<BigInt> power;
  WordLengthPattern wlp;
};

struct PreparedFlat {
  std::vector<Label> points;
  std::vector<std::size_t> messages;  // u with u . x = 0 on the flat
  BlockScheme scheme;
};

struct Best {
  std::optional<CombinedPattern> pattern;
  std::vector<std::size_t> items;
};

struct ChunkResult {
  std::vector<Best> best;
  std::uint64_t examined = 0;
  std::uint64_t work = 0;
};

void offer(Best& b, CombinedPattern&& pat, std::size_t item) {
  if (!b.pattern) {
    b.pattern = std::move(pat);
    b.items = {item};
    return;
  }
  const auto ord = compare(pat, *b.pattern);
  if (ord < 0) {
    b.pattern = std::move(pat);
    b.items = {item};
  } else if (ord == 0) {
    b.items.push_back(item);
  }
}

void merge(Best& into, Best&& from) {
  if (!from.pattern) return;
  if (!into.pattern) {
    into = std::move(from);
    return;
  }
  const auto ord = compare(*from.pattern, *into.pattern);
  if (ord < 0) into = std::move(from);
  else if (ord == 0) into.items.insert(into.items.end(), from.items.begin(), from.items.end());
}

SearchResult run_search(const std::vector<TreatmentSpec>& designs, int s, int m, int p,
                        std::span<const Criterion> criteria, unsigned threads, PairClearRule rule) {
  if (p < 1 || p > m - 1) {
    throw Error(Errc::InvalidP, "p must satisfy 1 <= p <= m-1 (got p=" + std::to_string(p) + ")");
  }
  if (criteria.empty()) throw Error(Errc::CriterionMismatch, "no criteria requested");
  const auto ps = ProjectiveSpace::get(s, m);
  const auto total_points = num_points(s, m);

  std::vector<PreparedDesign> pd;
  pd.reserve(designs.size());
  for (const auto& t : designs) {
    if (t.s() != s || t.m() != m) throw Error(Errc::InvalidDesign, "design lives in a different space");
    PreparedDesign d;
    d.labels = t.labels();
    d.used.assign(total_points + 1, false);
    for (Label l : d.labels) d.used[l] = true;
    d.power = power_sums(null_row_profile(*ps, d.labels), static_cast<int>(t.n()));
    d.wlp = wlp_from_power_sums(d.power, static_cast<int>(t.n()), s, m);
    pd.push_back(std::move(d));
  }
  std::vector<PreparedFlat> pf;
  for (const auto& fl : enumerate_flats(m, s, p)) {
    BlockScheme scheme = scheme_from_flat(fl);
    const auto gens = scheme.labels();
    std::vector<std::size_t> msgs;
    for (std::size_t u = 0; u < ps->num_messages(); ++u) {
      bool ok = true;
      for (Label g : gens) ok = ok && ps->dot(u, g) == 0;
      if (ok) msgs.push_back(u);
    }
    pf.push_back(PreparedFlat{fl.labels(), std::move(msgs), std::move(scheme)});
  }

  const std::size_t total_items = pd.size() * pf.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(total_items, threads * 4));
  std::vector<ChunkResult> results(chunks);

  auto run_chunk = [&](std::size_t c) {
    ChunkResult& res = results[c];
    res.best.assign(criteria.size(), Best{});
    const std::size_t lo = total_items * c / chunks;
    const std::size_t hi = total_items * (c + 1) / chunks;
    for (std::size_t item = lo; item < hi; ++item) {
      const PreparedDesign& d = pd[item / pf.size()];
      const PreparedFlat& f = pf[item % pf.size()];
      if (std::any_of(f.points.begin(), f.points.end(), [&](Label l) { return d.used[l]; })) continue;
      const std::size_t n = d.labels.size();
      std::vector<std::uint64_t> hist(n + 1, 0);
      for (std::size_t u : f.messages) {
        std::size_t z = 0;
        for (Label l : d.labels) z += ps->dot(u, l) == 0;
        ++hist[z];
      }
      res.work += f.messages.size();
      ++res.examined;
      WordLengthPattern w = d.wlp;
      const auto p1 = power_sums(CoincidenceProfile{ProfileReference::NullRow, hist}, static_cast<int>(n));
      add_block_part_from_power_sums(w, d.power, p1, s, m, p);
      for (std::size_t k = 0; k < criteria.size(); ++k) {
        offer(res.best[k], combined_pattern(w, criteria[k]), item);
      }
    }
  };

  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SearchResult out;
  out.stats.treatment_designs = pd.size();
  out.stats.flats = pf.size();
  std::vector<Best> best(criteria.size());
  for (auto& r : results) {
    out.stats.schemes_examined += r.examined;
    out.stats.work_units += r.work;
    for (std::size_t k = 0; k < criteria.size() && k < r.best.size(); ++k) merge(best[k], std::move(r.best[k]));
  }
  if (out.stats.schemes_examined == 0) {
    throw Error(Errc::NoRMEScheme, "no flat of dimension " + std::to_string(p) +
                                       " avoids the treatment columns");
  }

  // Winner details are computed once per distinct item.
  std::map<std::size_t, Candidate> cache;
  auto candidate = [&](std::size_t item) -> const Candidate& {
    auto it = cache.find(item);
    if (it != cache.end()) return it->second;
    const TreatmentSpec& t = designs[item / pf.size()];
    const BlockScheme& b = pf[item % pf.size()].scheme;
    Candidate c{t, b, compute_blocked_wlp(t, b), clear_counts(t, b, rule)};
    return cache.emplace(item, std::move(c)).first->second;
  };
  auto key = [](const Candidate& c) {
    auto tl = c.treatment.labels();
    std::sort(tl.begin(), tl.end());
    auto bl = c.block.labels();
    return std::make_pair(tl, bl);
  };
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    CriterionResult cr{criteria[k], *best[k].pattern, {}};
    for (std::size_t item : best[k].items) cr.winners.push_back(candidate(item));
    std::stable_sort(cr.winners.begin(), cr.winners.end(),
                     [&](const Candidate& a, const Candidate& b) { return key(a) < key(b); });
    out.per_criterion.push_back(std::move(cr));
  }
  std::set<Criterion> have(criteria.begin(), criteria.end());
  if (have.size() == kAllCriteria.size()) {
    std::map<Criterion, std::set<std::string>> sigs;
    for (const auto& cr : out.per_criterion) {
      for (const auto& w : cr.winners) sigs[cr.criterion].insert(pattern_signature(w.wlp));
    }
    out.situation = classify_situation(sigs);
  }
  return out;
}

}  // namespace

SearchResult best_blocking(const TreatmentSpec& t, int p, std::span<const Criterion> criteria,
                           unsigned threads, PairClearRule rule) {
  std::vector<TreatmentSpec> one{t};
  SearchResult r = run_search(one, t.s(), t.m(), p, criteria, threads, rule);
  r.stats.treatment_designs = 1;
  return r;
}

SearchResult ma_blocked_search(const SearchSpace& sp) {
  if (sp.p < 1 || sp.p > sp.m - 1) {
    throw Error(Errc::InvalidP, "p must satisfy 1 <= p <= m-1 (got p=" + std::to_string(sp.p) +
                                    ", m=" + std::to_string(sp.m) + ")");
  }
  const auto room = num_points(sp.s, sp.m) - num_points(sp.s, sp.p);
  if (static_cast<std::uint64_t>(sp.n) > room) {
    throw Error(Errc::NoRMEScheme, "n = " + std::to_string(sp.n) + " leaves no room for a flat of " +
                                       std::to_string(num_points(sp.s, sp.p)) + " points");
  }
  EnumerationStats es;
  std::vector<TreatmentSpec> designs;
  switch (sp.source) {
    case TreatmentSource::Fixed:
      designs = sp.fixed;
      break;
    case TreatmentSource::AllSubsets:
    case TreatmentSource::Extension:
      designs = enumerate_treatment_designs(sp.s, sp.m, sp.n, sp.source, sp.a3_cap, sp.limits, &es);
      break;
  }
  if (designs.empty()) throw Error(Errc::NoRMEScheme, "no treatment design in the search space");
  SearchResult r = run_search(designs, sp.s, sp.m, sp.p, sp.criteria, sp.threads, sp.pair_rule);
  r.stats.enumeration = es;
  return r;
}

}  // namespace mabd
