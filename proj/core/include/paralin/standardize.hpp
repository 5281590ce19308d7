// core/include/paralin/standardize.hpp

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

#ifndef PARALIN_STANDARDIZE_HPP_
#define PARALIN_STANDARDIZE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paralin/matrix.hpp"

namespace paralin {

// Per-dimension z-normalization statistics, fit on training frames only and
// applied unchanged everywhere else.
struct StandardizerModel {
  std::vector<double> mean;
  std::vector<double> std;  // population (divide-by-N) standard deviation
  std::uint64_t fitted_on = 0;
};

// Streaming fit, so a corpus never has to be pooled in memory.
class StandardizerAccumulator {
 public:
  void add(const Matrix &frames);
  StandardizerModel finalize() const;  // throws ParameterError if no frames seen

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  std::uint64_t count_ = 0;
};

StandardizerModel fit_standardizer(std::span<const FrameMatrix> matrices);

// (v - mean) / std per dimension; dimensions with std == 0 map to 0.
FrameMatrix apply_standardizer(const StandardizerModel &s, const FrameMatrix &m);
Matrix apply_standardizer(const StandardizerModel &s, const Matrix &frames);

// JSON object {format_version, mean, std, fitted_on}.
std::string standardizer_to_json(const StandardizerModel &s);
StandardizerModel standardizer_from_json(const std::string &text);
void save_standardizer(const StandardizerModel &s, const std::string &path);
StandardizerModel load_standardizer(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_STANDARDIZE_HPP_
