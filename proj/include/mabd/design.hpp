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

// Regular designs as linear codes: projective points, column labels,
// treatment specifications, blocking schemes and their row expansions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mabd/gf.hpp"

namespace mabd {

using Label = std::uint32_t;

/// How an integer column label maps to a coordinate vector.
///
/// `Yates` is the catalogue convention: factor f contributes the label
/// L_f + 1 for its own column, followed by y·x for every earlier column y,
/// then y·x², and so on, where L_f = (s^f - 1)/(s - 1). Labels run over
/// 1..L_m and every label names a normalized point. For s = 2 this is the
/// binary number with factor 0 as the least significant bit.
///
/// `MsbFirst`/`LsbFirst` read the label as a base-s number whose digits are
/// the coordinates; labels run over 1..s^m - 1 and need not be normalized.
enum class LabelConvention { Yates, MsbFirst, LsbFirst };

const char* to_string(LabelConvention c) noexcept;
LabelConvention parse_label_convention(const std::string& name);

/// (s^p - 1)/(s - 1), the number of points of PG(p-1, s).
std::uint64_t num_points(int s, int p);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// A nonzero vector of V_m viewed as a point of PG(m-1, s).
class PGPoint {
 public:
  PGPoint(int s, FieldVector coords);

  int s() const noexcept { return s_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const FieldVector& coords() const noexcept { return coords_; }
  Elem operator[](std::size_t i) const noexcept { return coords_[i]; }

  /// First nonzero coordinate equals 1.
  bool is_normalized() const noexcept;
  PGPoint normalized() const;
  bool same_point(const PGPoint& other) const;

  friend bool operator==(const PGPoint&, const PGPoint&) = default;

 private:
  int s_;
  FieldVector coords_;
};

PGPoint label_to_point(Label label, int s, int m,
                       LabelConvention conv = LabelConvention::Yates);
/// Inverse of label_to_point. Under `Yates` the point is normalized first.
Label point_to_label(const PGPoint& point, LabelConvention conv = LabelConvention::Yates);

/// The unblocked design: n distinct projective points spanning V_m.
class TreatmentSpec {
 public:
  TreatmentSpec(int s, int m, std::vector<PGPoint> columns);
  static TreatmentSpec from_labels(int s, int m, std::span<const Label> labels,
                                   LabelConvention conv = LabelConvention::Yates);

  int s() const noexcept { return field_.order(); }
  int m() const noexcept { return m_; }
  std::size_t n() const noexcept { return columns_.size(); }
  std::size_t k() const noexcept { return columns_.size() - static_cast<std::size_t>(m_); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<PGPoint>& columns() const noexcept { return columns_; }
  /// Number of input columns that had to be rescaled to normalized form.
  std::size_t rescaled_inputs() const noexcept { return rescaled_; }

  /// The m x n matrix T.
  FieldMatrix generator() const;
  std::vector<Label> labels(LabelConvention conv = LabelConvention::Yates) const;

 private:
  PrimeField field_;
  int m_;
  std::vector<PGPoint> columns_;
  std::size_t rescaled_ = 0;
};

/// The p independent block generators (columns of B).
class BlockScheme {
 public:
  BlockScheme(int s, int m, std::vector<PGPoint> generators);
  static BlockScheme from_labels(int s, int m, std::span<const Label> labels,
                                 LabelConvention conv = LabelConvention::Yates);

  int s() const noexcept { return field_.order(); }
  int m() const noexcept { return m_; }
  int p() const noexcept { return static_cast<int>(generators_.size()); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<PGPoint>& generators() const noexcept { return generators_; }
  /// The m x p matrix B.
  FieldMatrix matrix() const;
  std::vector<Label> labels(LabelConvention conv = LabelConvention::Yates) const;

 private:
  PrimeField field_;
  int m_;
  std::vector<PGPoint> generators_;
};

/// The (p-1)-flat spanned by a blocking scheme, as normalized points sorted
/// by Yates label.
struct Flat {
  int s;
  int m;
  std::vector<PGPoint> points;

  std::vector<Label> labels() const;
  bool contains(const PGPoint& pt) const;
};

/// N x n array of field elements; for regular designs N = s^m.
class DesignRows {
 public:
  DesignRows(int s, std::size_t n) : s_(s), n_(n) {}

  int s() const noexcept { return s_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ ? data_.size() / n_ : 0; }
  std::span<const Elem> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  void push_back(std::span<const Elem> r);
  bool has_zero_row() const noexcept;

 private:
  int s_;
  std::size_t n_;
  std::vector<Elem> data_;
};

/// Digits of message index `idx` in base s, coordinate 0 least significant.
FieldVector message_vector(std::uint64_t idx, int s, int m);

DesignRows expand_design(const TreatmentSpec& t);
Flat expand_flat(const BlockScheme& b);
bool is_rme(const TreatmentSpec& t, const BlockScheme& b);
/// Rows {uT : uB = 0}; the block that contains the null treatment.
DesignRows principal_block(const TreatmentSpec& t, const BlockScheme& b);
/// T's columns followed by the flat's points, as one unblocked design.
TreatmentSpec unblocked_view(const TreatmentSpec& t, const BlockScheme& b);

/// PG(m-1, s) with precomputed inner products between every message u in
/// V_m and every point, indexed by Yates label. Shared per (s, m).
class ProjectiveSpace {
 public:
  static std::shared_ptr<const ProjectiveSpace> get(int s, int m);

  int s() const noexcept { return s_; }
  int m() const noexcept { return m_; }
  std::size_t num_points() const noexcept { return points_.size(); }
  std::size_t num_messages() const noexcept { return messages_; }
  /// 1-based label.
  const PGPoint& point(Label label) const { return points_.at(label - 1); }
  /// u · point(label).
  Elem dot(std::size_t message, Label label) const noexcept {
    return dots_[message * points_.size() + (label - 1)];
  }

  ProjectiveSpace(int s, int m);

 private:
  int s_;
  int m_;
  std::size_t messages_;
  std::vector<PGPoint> points_;
  std::vector<Elem> dots_;
};

}  // namespace mabd
