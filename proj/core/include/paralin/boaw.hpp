// core/include/paralin/boaw.hpp

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

#ifndef PARALIN_BOAW_HPP_
#define PARALIN_BOAW_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "paralin/matrix.hpp"

namespace paralin {

enum class CodebookSource { kLld, kDelta };

std::string to_string(CodebookSource s);
CodebookSource codebook_source_from_string(const std::string &s);

// Vector-quantization codebook: N centroid rows sampled from training frames.
struct Codebook {
  Matrix centroids;  // N x D
  CodebookSource source = CodebookSource::kLld;
  std::uint64_t seed = 0;

  std::size_t size_n() const { return centroids.rows(); }
};

// Centroids are n frames drawn uniformly without replacement from the pooled
// training frames (random sampling, no k-means refinement). If n exceeds the
// frame count, every frame is used. The draw order is fixed by the seed and
// by the source tag, so an LLD and a delta codebook learned with the same
// seed sample independent positions.
Codebook learn_codebook(const Matrix &pooled_frames, std::size_t n, std::uint64_t seed,
                        CodebookSource source = CodebookSource::kLld);

// Histogram of the `assignments` nearest centroids per frame (Euclidean
// distance, ties to the lower centroid index), divided by the frame count.
// Entries sum to `assignments`.
std::vector<double> encode_boaw(const Codebook &cb, const FrameMatrix &m, int assignments);

// encode_boaw on the LLD stream and on the delta stream with its own
// codebook, concatenated.
std::vector<double> encode_boaw_paired(const Codebook &cb_lld, const Codebook &cb_delta,
                                       const FrameMatrix &m, const FrameMatrix &deltas,
                                       int assignments);

// JSON object {format_version, source, seed, centroids}.
std::string codebook_to_json(const Codebook &cb);
Codebook codebook_from_json(const std::string &text);
void save_codebook(const Codebook &cb, const std::string &path);
Codebook load_codebook(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_BOAW_HPP_
