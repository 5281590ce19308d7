// core/src/boaw.cpp

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

#include "paralin/boaw.hpp"

#include <algorithm>
#include <cstdint>

#include "json_util.hpp"
#include "paralin/error.hpp"
#include "paralin/rng.hpp"

namespace paralin {

std::string to_string(CodebookSource s) {
  return s == CodebookSource::kLld ? "lld" : "delta";
}

CodebookSource codebook_source_from_string(const std::string &s) {
  if (s == "lld") return CodebookSource::kLld;
  if (s == "delta") return CodebookSource::kDelta;
  throw FormatError("invalid codebook source '" + s + "' (expected lld or delta)");
}

Codebook learn_codebook(const Matrix &pooled_frames, std::size_t n, std::uint64_t seed,
                        CodebookSource source) {
  if (n == 0) throw ParameterError("codebook size must be positive");
  if (pooled_frames.rows() == 0) throw ParameterError("no frames to sample a codebook from");

  Codebook cb;
  cb.source = source;
  cb.seed = seed;

  Rng rng(seed, {static_cast<std::uint64_t>(source)});
  auto picks = rng.sample_indices(pooled_frames.rows(), n);
  cb.centroids = Matrix(picks.size(), pooled_frames.cols());
  for (std::size_t i = 0; i < picks.size(); ++i) {
    auto src = pooled_frames.row(picks[i]);
    auto dst = cb.centroids.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return cb;
}

namespace {

// Indices of the `count` nearest centroids under (squared distance, index)
// order. `dist` and `order` are scratch buffers reused across frames.
void nearest_centroids(const Matrix &centroids, std::span<const double> frame,
                       std::size_t count, std::vector<double> &dist,
                       std::vector<std::uint32_t> &order) {
  const std::size_t n = centroids.rows();
  dist.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = centroids.row(i);
    double sum = 0.0;
    for (std::size_t d = 0; d < c.size(); ++d) {
      double diff = frame[d] - c[d];
      sum += diff * diff;
    }
    dist[i] = sum;
  }
  order.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  };
  if (count < n) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count) - 1,
                     order.end(), less);
  }
}

}  // namespace

std::vector<double> encode_boaw(const Codebook &cb, const FrameMatrix &m, int assignments) {
  const std::size_t n = cb.size_n();
  if (m.frames.cols() != cb.centroids.cols()) {
    throw DataError("encode_boaw: frame dimension " + std::to_string(m.frames.cols()) +
                    " does not match codebook dimension " +
                    std::to_string(cb.centroids.cols()));
  }
  if (assignments < 1) throw ParameterError("assignments must be positive");
  if (static_cast<std::size_t>(assignments) > n) {
    throw ParameterError("assignments (" + std::to_string(assignments) +
                         ") exceeds codebook size (" + std::to_string(n) + ")");
  }

  const std::size_t t_count = m.frames.rows();
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<double> dist;
  std::vector<std::uint32_t> order;
  for (std::size_t t = 0; t < t_count; ++t) {
    nearest_centroids(cb.centroids, m.frames.row(t),
                      static_cast<std::size_t>(assignments), dist, order);
    for (int a = 0; a < assignments; ++a) ++counts[order[static_cast<std::size_t>(a)]];
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(t_count);
  }
  return out;
}

std::vector<double> encode_boaw_paired(const Codebook &cb_lld, const Codebook &cb_delta,
                                       const FrameMatrix &m, const FrameMatrix &deltas,
                                       int assignments) {
  if (m.frames.rows() != deltas.frames.rows()) {
    throw DataError("encode_boaw_paired: frame count mismatch between streams");
  }
  std::vector<double> out = encode_boaw(cb_lld, m, assignments);
  std::vector<double> delta_part = encode_boaw(cb_delta, deltas, assignments);
  out.insert(out.end(), delta_part.begin(), delta_part.end());
  return out;
}

std::string codebook_to_json(const Codebook &cb) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["source"] = to_string(cb.source);
  j["seed"] = cb.seed;
  j["centroids"] = detail::matrix_to_json(cb.centroids);
  return j.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string &text) {
  auto j = detail::parse_json(text, "codebook");
  detail::check_version(j, "codebook");
  Codebook cb;
  cb.source = codebook_source_from_string(j.at("source").get<std::string>());
  cb.seed = j.at("seed").get<std::uint64_t>();
  cb.centroids = detail::matrix_from_json(j.at("centroids"), "codebook centroids");
  if (cb.centroids.rows() == 0) throw FormatError("codebook: no centroids");
  if (!all_finite(cb.centroids)) throw FormatError("codebook: non-finite centroid");
  return cb;
}

void save_codebook(const Codebook &cb, const std::string &path) {
  detail::write_file(path, codebook_to_json(cb));
}

Codebook load_codebook(const std::string &path) {
  return codebook_from_json(detail::read_file(path));
}

}  // namespace paralin
