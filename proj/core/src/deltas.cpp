// core/src/deltas.cpp

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

#include "paralin/deltas.hpp"

#include <algorithm>

#include "paralin/error.hpp"

namespace paralin {

FrameMatrix compute_deltas(const FrameMatrix &m, int window) {
  if (window < 1) throw ParameterError("delta window must be >= 1");
  const Matrix &x = m.frames;
  const std::size_t t_count = x.rows();
  const std::size_t dim = x.cols();

  double denom = 0.0;
  for (int w = 1; w <= window; ++w) denom += static_cast<double>(w) * w;
  denom *= 2.0;

  FrameMatrix out;
  out.utterance_id = m.utterance_id;
  out.frame_step = m.frame_step;
  out.frames = Matrix(t_count, dim);

  auto clamp_row = [&](std::ptrdiff_t t) {
    t = std::clamp<std::ptrdiff_t>(t, 0, static_cast<std::ptrdiff_t>(t_count) - 1);
    return x.row(static_cast<std::size_t>(t));
  };

  for (std::size_t t = 0; t < t_count; ++t) {
    auto dst = out.frames.row(t);
    for (int w = 1; w <= window; ++w) {
      auto ahead = clamp_row(static_cast<std::ptrdiff_t>(t) + w);
      auto behind = clamp_row(static_cast<std::ptrdiff_t>(t) - w);
      for (std::size_t d = 0; d < dim; ++d) {
        dst[d] += static_cast<double>(w) * (ahead[d] - behind[d]);
      }
    }
    for (std::size_t d = 0; d < dim; ++d) dst[d] /= denom;
  }
  return out;
}

FrameMatrix append_deltas(const FrameMatrix &m, int window) {
  FrameMatrix deltas = compute_deltas(m, window);
  FrameMatrix out;
  out.utterance_id = m.utterance_id;
  out.frame_step = m.frame_step;
  out.frames = hstack(m.frames, deltas.frames);
  return out;
}

}  // namespace paralin
