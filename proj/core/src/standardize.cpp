// core/src/standardize.cpp

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

#include "paralin/standardize.hpp"

#include <cmath>

#include "json_util.hpp"
#include "paralin/error.hpp"

namespace paralin {

void StandardizerAccumulator::add(const Matrix &frames) {
  if (frames.rows() == 0) return;
  if (sum_.empty()) {
    sum_.assign(frames.cols(), 0.0);
    sum_sq_.assign(frames.cols(), 0.0);
  } else if (frames.cols() != sum_.size()) {
    throw DataError("standardizer: dimension mismatch (" + std::to_string(sum_.size()) +
                    " vs " + std::to_string(frames.cols()) + ")");
  }
  for (std::size_t r = 0; r < frames.rows(); ++r) {
    auto row = frames.row(r);
    for (std::size_t d = 0; d < row.size(); ++d) {
      sum_[d] += row[d];
      sum_sq_[d] += row[d] * row[d];
    }
  }
  count_ += frames.rows();
}

StandardizerModel StandardizerAccumulator::finalize() const {
  if (count_ == 0) throw ParameterError("standardizer: no frames to fit on");
  StandardizerModel s;
  s.fitted_on = count_;
  s.mean.resize(sum_.size());
  s.std.resize(sum_.size());
  double n = static_cast<double>(count_);
  for (std::size_t d = 0; d < sum_.size(); ++d) {
    double mean = sum_[d] / n;
    double var = sum_sq_[d] / n - mean * mean;
    s.mean[d] = mean;
    s.std[d] = var > 0.0 ? std::sqrt(var) : 0.0;
  }
  return s;
}

StandardizerModel fit_standardizer(std::span<const FrameMatrix> matrices) {
  StandardizerAccumulator acc;
  for (const auto &m : matrices) acc.add(m.frames);
  return acc.finalize();
}

Matrix apply_standardizer(const StandardizerModel &s, const Matrix &frames) {
  if (frames.cols() != s.mean.size()) {
    throw DataError("standardizer: dimension mismatch (model " +
                    std::to_string(s.mean.size()) + ", frames " +
                    std::to_string(frames.cols()) + ")");
  }
  Matrix out(frames.rows(), frames.cols());
  for (std::size_t r = 0; r < frames.rows(); ++r) {
    auto src = frames.row(r);
    auto dst = out.row(r);
    for (std::size_t d = 0; d < src.size(); ++d) {
      dst[d] = s.std[d] > 0.0 ? (src[d] - s.mean[d]) / s.std[d] : 0.0;
    }
  }
  return out;
}

FrameMatrix apply_standardizer(const StandardizerModel &s, const FrameMatrix &m) {
  FrameMatrix out;
  out.utterance_id = m.utterance_id;
  out.frame_step = m.frame_step;
  out.frames = apply_standardizer(s, m.frames);
  return out;
}

std::string standardizer_to_json(const StandardizerModel &s) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["mean"] = s.mean;
  j["std"] = s.std;
  j["fitted_on"] = s.fitted_on;
  return j.dump(2) + "\n";
}

StandardizerModel standardizer_from_json(const std::string &text) {
  auto j = detail::parse_json(text, "standardizer");
  detail::check_version(j, "standardizer");
  StandardizerModel s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.std = j.at("std").get<std::vector<double>>();
  s.fitted_on = j.at("fitted_on").get<std::uint64_t>();
  if (s.mean.size() != s.std.size()) {
    throw FormatError("standardizer: mean/std size mismatch");
  }
  for (double v : s.std) {
    if (v < 0.0 || !std::isfinite(v)) throw FormatError("standardizer: invalid std entry");
  }
  return s;
}

void save_standardizer(const StandardizerModel &s, const std::string &path) {
  detail::write_file(path, standardizer_to_json(s));
}

StandardizerModel load_standardizer(const std::string &path) {
  return standardizer_from_json(detail::read_file(path));
}

}  // namespace paralin
