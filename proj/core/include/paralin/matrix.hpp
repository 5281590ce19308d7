// core/include/paralin/matrix.hpp

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

#ifndef PARALIN_MATRIX_HPP_
#define PARALIN_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace paralin {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  // Appends a row; an empty matrix takes its column count from the first row.
  void append_row(std::span<const double> values);
  void append_rows(const Matrix &other);

  friend bool operator==(const Matrix &, const Matrix &) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

bool all_finite(const Matrix &m);

// Horizontal concatenation; row counts must match.
Matrix hstack(const Matrix &a, const Matrix &b);

// Per-utterance sequence of frame-level feature vectors, T x D.
struct FrameMatrix {
  std::string utterance_id;
  Matrix frames;
  double frame_step = 0.010;  // seconds per frame
};

}  // namespace paralin

#endif  // PARALIN_MATRIX_HPP_
