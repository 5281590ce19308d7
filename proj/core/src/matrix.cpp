// core/src/matrix.cpp

// Copyright 2026  paralin authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "paralin/matrix.hpp"

#include <cmath>

#include "paralin/error.hpp"

namespace paralin {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  for (const auto &r : rows) m.append_row(std::vector<double>(r));
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>> &rows) {
  Matrix m;
  for (const auto &r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0) {
    cols_ = values.size();
  } else if (values.size() != cols_) {
    throw DataError("append_row: expected " + std::to_string(cols_) +
                    " columns, got " + std::to_string(values.size()));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::append_rows(const Matrix &other) {
  if (other.rows_ == 0) return;
  if (rows_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) {
    throw DataError("append_rows: column mismatch (" + std::to_string(cols_) +
                    " vs " + std::to_string(other.cols_) + ")");
  }
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

bool all_finite(const Matrix &m) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix hstack(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows()) {
    throw DataError("hstack: row mismatch (" + std::to_string(a.rows()) + " vs " +
                    std::to_string(b.rows()) + ")");
  }
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    auto ra = a.row(r);
    auto rb = b.row(r);
    for (std::size_t c = 0; c < ra.size(); ++c) dst[c] = ra[c];
    for (std::size_t c = 0; c < rb.size(); ++c) dst[ra.size() + c] = rb[c];
  }
  return out;
}

}  // namespace paralin
