// core/src/fisher.cpp

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

#include "paralin/fisher.hpp"

#include <cmath>

#include "paralin/error.hpp"

namespace paralin {

FisherVector encode_fisher(const DiagonalGmm &g, const FrameMatrix &m) {
  const std::size_t k_count = g.components();
  const std::size_t dim = g.dim();
  if (m.frames.cols() != dim) {
    throw DataError("encode_fisher: frame dimension " + std::to_string(m.frames.cols()) +
                    " does not match model dimension " + std::to_string(dim));
  }
  const std::size_t t_count = m.frames.rows();
  if (t_count == 0) throw ParameterError("encode_fisher: no frames");

  GmmScorer scorer(g);
  std::vector<double> resp(k_count);
  std::vector<double> acc_mean(k_count * dim, 0.0);
  std::vector<double> acc_std(k_count * dim, 0.0);

  for (std::size_t t = 0; t < t_count; ++t) {
    auto row = m.frames.row(t);
    scorer.responsibilities(row, resp);
    for (std::size_t k = 0; k < k_count; ++k) {
      double r = resp[k];
      if (r == 0.0) continue;
      auto mu = g.means.row(k);
      auto sd = g.stds.row(k);
      double *am = acc_mean.data() + k * dim;
      double *as = acc_std.data() + k * dim;
      for (std::size_t d = 0; d < dim; ++d) {
        double z = (row[d] - mu[d]) / sd[d];
        am[d] += r * z;
        as[d] += r * (z * z - 1.0);
      }
    }
  }

  FisherVector fv;
  fv.gmm_ref = g.model_id();
  fv.values.resize(2 * dim * k_count);
  const double inv_t = 1.0 / static_cast<double>(t_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const double mean_norm = inv_t / std::sqrt(g.weights[k]);
    const double std_norm = inv_t / std::sqrt(2.0 * g.weights[k]);
    for (std::size_t d = 0; d < dim; ++d) {
      fv.values[k * dim + d] = mean_norm * acc_mean[k * dim + d];
      fv.values[k_count * dim + k * dim + d] = std_norm * acc_std[k * dim + d];
    }
  }
  return fv;
}

}  // namespace paralin
