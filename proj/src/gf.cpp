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

#include "mabd/gf.hpp"

#include <algorithm>
#include <string>

namespace mabd {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidDesign: return "InvalidDesign";
    case Errc::DependentGenerators: return "DependentGenerators";
    case Errc::NotRME: return "NotRME";
    case Errc::MissingZeroRow: return "MissingZeroRow";
    case Errc::NonIntegralPattern: return "NonIntegralPattern";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidP: return "InvalidP";
    case Errc::WrongField: return "WrongField";
    case Errc::CriterionMismatch: return "CriterionMismatch";
    case Errc::NoRMEScheme: return "NoRMEScheme";
    case Errc::Parse: return "ParseError";
  }
  return "Unknown";
}

PrimeField::PrimeField(int s) : s_(s) {
  if (s != 2 && s != 3 && s != 5) {
    throw Error(Errc::UnsupportedField,
                "field order " + std::to_string(s) + " not supported (expected 2, 3 or 5)");
  }
}

Elem PrimeField::inv(Elem a) const {
  if (a % s_ == 0) throw Error(Errc::ZeroInverse, "zero has no multiplicative inverse");
  // s <= 5, so a linear scan is as fast as anything else.
  for (int b = 1; b < s_; ++b) {
    if ((a * b) % s_ == 1) return static_cast<Elem>(b);
  }
  return 0;  // unreachable for prime s
}

Elem PrimeField::dot(std::span<const Elem> a, std::span<const Elem> b) const noexcept {
  unsigned acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<unsigned>(a[i]) * b[i];
  return static_cast<Elem>(acc % static_cast<unsigned>(s_));
}

FieldScalar::FieldScalar(long long value, int modulus)
    : field_(modulus), value_(field_.reduce(value)) {}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  if (!(field_ == o.field_)) throw Error(Errc::WrongField, "mixed moduli in addition");
  return {field_.add(value_, o.value_), field_};
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
  if (!(field_ == o.field_)) throw Error(Errc::WrongField, "mixed moduli in subtraction");
  return {field_.sub(value_, o.value_), field_};
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  if (!(field_ == o.field_)) throw Error(Errc::WrongField, "mixed moduli in multiplication");
  return {field_.mul(value_, o.value_), field_};
}

FieldScalar field_inverse(const FieldScalar& a) {
  return FieldScalar(a.field().inv(a.value()), a.modulus());
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(PrimeField field, std::initializer_list<std::initializer_list<int>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::InvalidDesign, "ragged matrix literal");
    for (int v : r) data_.push_back(field_.reduce(v));
  }
}

FieldMatrix FieldMatrix::from_rows(PrimeField field, const std::vector<FieldVector>& rows,
                                   std::size_t cols) {
  FieldMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::InvalidDesign, "ragged row list");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = field.reduce(rows[r][c]);
  }
  return m;
}

FieldMatrix FieldMatrix::from_columns(PrimeField field, const std::vector<FieldVector>& cols,
                                      std::size_t height) {
  FieldMatrix m(field, height, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != height) throw Error(Errc::InvalidDesign, "ragged column list");
    for (std::size_t r = 0; r < height; ++r) m.at(r, c) = field.reduce(cols[c][r]);
  }
  return m;
}

FieldVector FieldMatrix::column(std::size_t c) const {
  FieldVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (!(field_ == rhs.field_) || cols_ != rhs.rows_) {
    throw Error(Errc::InvalidDesign, "matrix product shape or field mismatch");
  }
  FieldMatrix out(field_, rows_, rhs.cols_);
  const auto s = static_cast<unsigned>(field_.order());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      unsigned acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += static_cast<unsigned>(at(r, k)) * rhs.at(k, c);
      out.at(r, c) = static_cast<Elem>(acc % s);
    }
  }
  return out;
}

FieldVector FieldMatrix::left_multiply(std::span<const Elem> v) const {
  FieldVector out(cols_, 0);
  const auto s = static_cast<unsigned>(field_.order());
  for (std::size_t c = 0; c < cols_; ++c) {
    unsigned acc = 0;
    for (std::size_t r = 0; r < rows_; ++r) acc += static_cast<unsigned>(v[r]) * at(r, c);
    out[c] = static_cast<Elem>(acc % s);
  }
  return out;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

RowEchelon row_reduce(const FieldMatrix& m) {
  FieldMatrix a = m;
  const PrimeField& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
    std::size_t pr = lead_row;
    while (pr < a.rows() && a.at(pr, c) == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != lead_row) {
      auto x = a.row(pr);
      auto y = a.row(lead_row);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    const Elem scale = f.inv(a.at(lead_row, c));
    for (auto& e : a.row(lead_row)) e = f.mul(e, scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a.at(r, c) == 0) continue;
      const Elem factor = a.at(r, c);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        a.at(r, k) = f.sub(a.at(r, k), f.mul(factor, a.at(lead_row, k)));
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return RowEchelon{pivots.size(), std::move(a), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return row_reduce(m).rank; }

FieldMatrix null_space(const FieldMatrix& m) {
  const RowEchelon re = row_reduce(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : re.pivots) is_pivot[p] = true;

  FieldMatrix basis(f, m.cols() - re.rank, m.cols());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.at(out, free) = 1;
    for (std::size_t i = 0; i < re.rank; ++i) {
      basis.at(out, re.pivots[i]) = f.neg(re.reduced.at(i, free));
    }
    ++out;
  }
  return basis;
}

}  // namespace mabd
