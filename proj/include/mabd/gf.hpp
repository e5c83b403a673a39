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

// Exact arithmetic and dense linear algebra over the prime fields GF(2),
// GF(3) and GF(5).

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "mabd/error.hpp"

namespace mabd {

using Elem = std::uint8_t;
using FieldVector = std::vector<Elem>;

class PrimeField {
 public:
  /// Accepts s in {2, 3, 5}; anything else throws UnsupportedField.
  explicit PrimeField(int s);

  int order() const noexcept { return s_; }

  Elem add(Elem a, Elem b) const noexcept { return static_cast<Elem>((a + b) % s_); }
  Elem sub(Elem a, Elem b) const noexcept { return static_cast<Elem>((a + s_ - b) % s_); }
  Elem mul(Elem a, Elem b) const noexcept { return static_cast<Elem>((a * b) % s_); }
  Elem neg(Elem a) const noexcept { return static_cast<Elem>((s_ - a) % s_); }
  Elem inv(Elem a) const;
  Elem reduce(long long v) const noexcept {
    long long r = v % s_;
    return static_cast<Elem>(r < 0 ? r + s_ : r);
  }

  /// Dot product of two equal-length vectors.
  Elem dot(std::span<const Elem> a, std::span<const Elem> b) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  int s_;
};

/// A single field element tagged with its modulus.
class FieldScalar {
 public:
  FieldScalar(long long value, int modulus);

  Elem value() const noexcept { return value_; }
  int modulus() const noexcept { return field_.order(); }
  const PrimeField& field() const noexcept { return field_; }

  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  bool operator==(const FieldScalar& o) const noexcept {
    return value_ == o.value_ && field_ == o.field_;
  }

 private:
  FieldScalar(Elem v, PrimeField f) : field_(f), value_(v) {}
  PrimeField field_;
  Elem value_;
};

FieldScalar field_inverse(const FieldScalar& a);

/// Row-major rectangular matrix over one prime field.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  FieldMatrix(PrimeField field, std::initializer_list<std::initializer_list<int>> rows);
  static FieldMatrix from_rows(PrimeField field, const std::vector<FieldVector>& rows,
                               std::size_t cols);
  /// Matrix whose columns are the given vectors (all of length `height`).
  static FieldMatrix from_columns(PrimeField field, const std::vector<FieldVector>& cols,
                                  std::size_t height);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  FieldVector column(std::size_t c) const;

  FieldMatrix transpose() const;
  FieldMatrix operator*(const FieldMatrix& rhs) const;
  /// Row vector times matrix.
  FieldVector left_multiply(std::span<const Elem> v) const;
  bool is_zero() const noexcept;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

struct RowEchelon {
  std::size_t rank;
  FieldMatrix reduced;  // reduced row-echelon form, zero rows last
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Pivot search scans columns left to right and
/// takes the lowest-indexed eligible row; pivots are scaled to 1.
RowEchelon row_reduce(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

/// Basis (as rows) of {u : M u^T = 0}; its row count is cols(M) - rank(M).
FieldMatrix null_space(const FieldMatrix& m);

}  // namespace mabd
