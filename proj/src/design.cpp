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

#include "mabd/design.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace mabd {

const char* to_string(LabelConvention c) noexcept {
  switch (c) {
    case LabelConvention::Yates: return "yates";
    case LabelConvention::MsbFirst: return "msb";
    case LabelConvention::LsbFirst: return "lsb";
  }
  return "yates";
}

LabelConvention parse_label_convention(const std::string& name) {
  if (name == "yates") return LabelConvention::Yates;
  if (name == "msb") return LabelConvention::MsbFirst;
  if (name == "lsb") return LabelConvention::LsbFirst;
  throw Error(Errc::Parse, "unknown label convention '" + name + "' (yates, msb, lsb)");
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::uint64_t num_points(int s, int p) {
  if (p <= 0) return 0;
  return (ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(p)) - 1) /
         static_cast<std::uint64_t>(s - 1);
}

// ---------------------------------------------------------------------------
// PGPoint

PGPoint::PGPoint(int s, FieldVector coords) : s_(s), coords_(std::move(coords)) {
  const PrimeField f(s);
  bool nonzero = false;
  for (auto& c : coords_) {
    if (c >= s) throw Error(Errc::OutOfRange, "coordinate outside GF(s)");
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw Error(Errc::InvalidDesign, "the zero vector is not a projective point");
  (void)f;
}

bool PGPoint::is_normalized() const noexcept {
  for (Elem c : coords_) {
    if (c != 0) return c == 1;
  }
  return false;
}

PGPoint PGPoint::normalized() const {
  const PrimeField f(s_);
  Elem lead = 0;
  for (Elem c : coords_) {
    if (c != 0) {
      lead = c;
      break;
    }
  }
  const Elem scale = f.inv(lead);
  FieldVector out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = f.mul(coords_[i], scale);
  return PGPoint(s_, std::move(out));
}

bool PGPoint::same_point(const PGPoint& other) const {
  return s_ == other.s_ && dim() == other.dim() && normalized() == other.normalized();
}

// ---------------------------------------------------------------------------
// Labels

namespace {

FieldVector yates_decode(Label label, int s, int m) {
  // Locate the factor f whose block (L_f, L_{f+1}] holds the label.
  int f = 0;
  while (f < m && num_points(s, f + 1) < label) ++f;
  FieldVector v(static_cast<std::size_t>(m), 0);
  const auto lf = num_points(s, f);
  const auto offset = label - lf - 1;
  if (offset == 0) {
    v[static_cast<std::size_t>(f)] = 1;
    return v;
  }
  const auto a = (offset - 1) / lf + 1;
  const auto prev = static_cast<Label>((offset - 1) % lf + 1);
  v = yates_decode(prev, s, m);
  v[static_cast<std::size_t>(f)] = static_cast<Elem>(a);
  return v;
}

Label yates_encode(const FieldVector& v, int s) {
  int f = static_cast<int>(v.size()) - 1;
  while (f >= 0 && v[static_cast<std::size_t>(f)] == 0) --f;
  const Elem a = v[static_cast<std::size_t>(f)];
  FieldVector y = v;
  y[static_cast<std::size_t>(f)] = 0;
  const auto lf = static_cast<Label>(num_points(s, f));
  const bool y_zero = std::all_of(y.begin(), y.end(), [](Elem e) { return e == 0; });
  if (y_zero) return lf + 1;  // normalized input means a == 1 here
  return lf + 1 + static_cast<Label>(a - 1) * lf + yates_encode(y, s);
}

}  // namespace

PGPoint label_to_point(Label label, int s, int m, LabelConvention conv) {
  const PrimeField field(s);
  (void)field;
  if (m < 1) throw Error(Errc::OutOfRange, "dimension m must be positive");
  const auto su = static_cast<std::uint64_t>(s);
  const std::uint64_t upper = conv == LabelConvention::Yates
                                  ? num_points(s, m)
                                  : ipow(su, static_cast<unsigned>(m)) - 1;
  if (label < 1 || label > upper) {
    throw Error(Errc::OutOfRange, "label " + std::to_string(label) + " outside [1, " +
                                      std::to_string(upper) + "] for s=" + std::to_string(s) +
                                      " m=" + std::to_string(m));
  }
  FieldVector v(static_cast<std::size_t>(m), 0);
  switch (conv) {
    case LabelConvention::Yates:
      v = yates_decode(label, s, m);
      break;
    case LabelConvention::MsbFirst: {
      std::uint64_t x = label;
      for (int i = m - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = static_cast<Elem>(x % su);
        x /= su;
      }
      break;
    }
    case LabelConvention::LsbFirst: {
      std::uint64_t x = label;
      for (int i = 0; i < m; ++i) {
        v[static_cast<std::size_t>(i)] = static_cast<Elem>(x % su);
        x /= su;
      }
      break;
    }
  }
  return PGPoint(s, std::move(v));
}

Label point_to_label(const PGPoint& point, LabelConvention conv) {
  const auto su = static_cast<Label>(point.s());
  const auto& c = point.coords();
  switch (conv) {
    case LabelConvention::Yates:
      return yates_encode(point.normalized().coords(), point.s());
    case LabelConvention::MsbFirst: {
      Label x = 0;
      for (Elem e : c) x = x * su + e;
      return x;
    }
    case LabelConvention::LsbFirst: {
      Label x = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) x = x * su + *it;
      return x;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// TreatmentSpec / BlockScheme

namespace {

std::vector<PGPoint> points_from_labels(int s, int m, std::span<const Label> labels,
                                        LabelConvention conv) {
  std::vector<PGPoint> pts;
  pts.reserve(labels.size());
  for (Label l : labels) pts.push_back(label_to_point(l, s, m, conv));
  return pts;
}

std::vector<FieldVector> coords_of(const std::vector<PGPoint>& pts) {
  std::vector<FieldVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.coords());
  return out;
}

}  // namespace

TreatmentSpec::TreatmentSpec(int s, int m, std::vector<PGPoint> columns)
    : field_(s), m_(m) {
  if (m < 1) throw Error(Errc::InvalidDesign, "m must be positive");
  columns_.reserve(columns.size());
  for (auto& c : columns) {
    if (c.s() != s || c.dim() != static_cast<std::size_t>(m)) {
      throw Error(Errc::InvalidDesign, "column does not live in V_m over GF(s)");
    }
    if (!c.is_normalized()) ++rescaled_;
    columns_.push_back(c.normalized());
  }
  std::vector<FieldVector> sorted = coords_of(columns_);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::InvalidDesign, "treatment columns are not distinct projective points");
  }
  if (columns_.size() < static_cast<std::size_t>(m)) {
    throw Error(Errc::InvalidDesign, "need at least m columns");
  }
  if (rank(generator()) != static_cast<std::size_t>(m)) {
    throw Error(Errc::InvalidDesign, "treatment matrix T does not have full row rank m");
  }
}

TreatmentSpec TreatmentSpec::from_labels(int s, int m, std::span<const Label> labels,
                                         LabelConvention conv) {
  return TreatmentSpec(s, m, points_from_labels(s, m, labels, conv));
}

FieldMatrix TreatmentSpec::generator() const {
  return FieldMatrix::from_columns(field_, coords_of(columns_), static_cast<std::size_t>(m_));
}

std::vector<Label> TreatmentSpec::labels(LabelConvention conv) const {
  std::vector<Label> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(point_to_label(c, conv));
  return out;
}

BlockScheme::BlockScheme(int s, int m, std::vector<PGPoint> generators) : field_(s), m_(m) {
  if (generators.empty()) throw Error(Errc::InvalidDesign, "a blocking scheme needs p >= 1");
  for (auto& g : generators) {
    if (g.s() != s || g.dim() != static_cast<std::size_t>(m)) {
      throw Error(Errc::InvalidDesign, "block generator does not live in V_m over GF(s)");
    }
    generators_.push_back(g.normalized());
  }
  if (rank(matrix()) != generators_.size()) {
    throw Error(Errc::DependentGenerators, "block generators are linearly dependent");
  }
}

BlockScheme BlockScheme::from_labels(int s, int m, std::span<const Label> labels,
                                     LabelConvention conv) {
  return BlockScheme(s, m, points_from_labels(s, m, labels, conv));
}

FieldMatrix BlockScheme::matrix() const {
  return FieldMatrix::from_columns(field_, coords_of(generators_), static_cast<std::size_t>(m_));
}

std::vector<Label> BlockScheme::labels(LabelConvention conv) const {
  std::vector<Label> out;
  for (const auto& g : generators_) out.push_back(point_to_label(g, conv));
  return out;
}

std::vector<Label> Flat::labels() const {
  std::vector<Label> out;
  for (const auto& p : points) out.push_back(point_to_label(p));
  return out;
}

bool Flat::contains(const PGPoint& pt) const {
  const PGPoint n = pt.normalized();
  return std::any_of(points.begin(), points.end(), [&](const PGPoint& q) { return q == n; });
}

// ---------------------------------------------------------------------------
// Row expansions

void DesignRows::push_back(std::span<const Elem> r) {
  data_.insert(data_.end(), r.begin(), r.end());
}

bool DesignRows::has_zero_row() const noexcept {
  for (std::size_t i = 0; i < size(); ++i) {
    auto r = row(i);
    if (std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; })) return true;
  }
  return false;
}

FieldVector message_vector(std::uint64_t idx, int s, int m) {
  FieldVector v(static_cast<std::size_t>(m));
  const auto su = static_cast<std::uint64_t>(s);
  for (int i = 0; i < m; ++i) {
    v[static_cast<std::size_t>(i)] = static_cast<Elem>(idx % su);
    idx /= su;
  }
  return v;
}

DesignRows expand_design(const TreatmentSpec& t) {
  const FieldMatrix g = t.generator();
  DesignRows rows(t.s(), t.n());
  const auto count = ipow(static_cast<std::uint64_t>(t.s()), static_cast<unsigned>(t.m()));
  for (std::uint64_t v = 0; v < count; ++v) {
    rows.push_back(g.left_multiply(message_vector(v, t.s(), t.m())));
  }
  return rows;
}

Flat expand_flat(const BlockScheme& b) {
  const int s = b.s();
  const int p = b.p();
  const FieldMatrix bm = b.matrix();
  std::vector<PGPoint> pts;
  const auto count = ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(p));
  for (std::uint64_t c = 1; c < count; ++c) {
    const FieldVector lambda = message_vector(c, s, p);
    // Keep only coefficient vectors whose first nonzero entry is 1.
    if (!PGPoint(s, lambda).is_normalized()) continue;
    FieldVector v(static_cast<std::size_t>(b.m()));
    for (int r = 0; r < b.m(); ++r) {
      v[static_cast<std::size_t>(r)] = b.field().dot(bm.row(static_cast<std::size_t>(r)), lambda);
    }
    pts.push_back(PGPoint(s, std::move(v)).normalized());
  }
  std::sort(pts.begin(), pts.end(), [](const PGPoint& a, const PGPoint& c) {
    return point_to_label(a) < point_to_label(c);
  });
  return Flat{s, b.m(), std::move(pts)};
}

bool is_rme(const TreatmentSpec& t, const BlockScheme& b) {
  if (t.s() != b.s() || t.m() != b.m()) return false;
  const Flat f = expand_flat(b);
  return std::none_of(t.columns().begin(), t.columns().end(),
                      [&](const PGPoint& c) { return f.contains(c); });
}

DesignRows principal_block(const TreatmentSpec& t, const BlockScheme& b) {
  if (t.s() != b.s() || t.m() != b.m()) {
    throw Error(Errc::InvalidDesign, "treatment and block live in different spaces");
  }
  const FieldMatrix g = t.generator();
  const FieldMatrix bm = b.matrix();
  DesignRows rows(t.s(), t.n());
  const auto count = ipow(static_cast<std::uint64_t>(t.s()), static_cast<unsigned>(t.m()));
  for (std::uint64_t v = 0; v < count; ++v) {
    const FieldVector u = message_vector(v, t.s(), t.m());
    const FieldVector ub = bm.left_multiply(u);
    if (std::any_of(ub.begin(), ub.end(), [](Elem e) { return e != 0; })) continue;
    rows.push_back(g.left_multiply(u));
  }
  return rows;
}

TreatmentSpec unblocked_view(const TreatmentSpec& t, const BlockScheme& b) {
  if (!is_rme(t, b)) throw Error(Errc::NotRME, "flat meets the treatment columns");
  std::vector<PGPoint> cols = t.columns();
  const Flat f = expand_flat(b);
  cols.insert(cols.end(), f.points.begin(), f.points.end());
  return TreatmentSpec(t.s(), t.m(), std::move(cols));
}

// ---------------------------------------------------------------------------
// ProjectiveSpace

ProjectiveSpace::ProjectiveSpace(int s, int m)
    : s_(s), m_(m), messages_(ipow(static_cast<std::uint64_t>(s), static_cast<unsigned>(m))) {
  const PrimeField f(s);
  const auto np = mabd::num_points(s, m);
  if (messages_ * np > (1u << 24)) {
    throw Error(Errc::TooLarge, "projective space too large for the inner-product table");
  }
  points_.reserve(np);
  for (Label l = 1; l <= np; ++l) points_.push_back(label_to_point(l, s, m));
  dots_.resize(messages_ * np);
  for (std::size_t u = 0; u < messages_; ++u) {
    const FieldVector uv = message_vector(u, s, m);
    for (std::size_t j = 0; j < np; ++j) dots_[u * np + j] = f.dot(uv, points_[j].coords());
  }
}

std::shared_ptr<const ProjectiveSpace> ProjectiveSpace::get(int s, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ProjectiveSpace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{s, m}];
  if (!slot) slot = std::make_shared<const ProjectiveSpace>(s, m);
  return slot;
}

}  // namespace mabd
