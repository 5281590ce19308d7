// core/include/paralin/fisher.hpp

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

#ifndef PARALIN_FISHER_HPP_
#define PARALIN_FISHER_HPP_

#include <string>
#include <vector>

#include "paralin/gmm.hpp"
#include "paralin/matrix.hpp"

namespace paralin {

// Normalized gradient of the per-frame average log-likelihood of an
// utterance under a diagonal GMM, length 2*D*K.
struct FisherVector {
  std::vector<double> values;
  std::string gmm_ref;
};

// Closed form with the analytic diagonal Fisher-information normalization:
// for component k, dimension d, with z = (x - mu_kd) / sigma_kd,
//   mean entry:  1/(T*sqrt(w_k))   * sum_t gamma_t(k) * z
//   std entry:   1/(T*sqrt(2*w_k)) * sum_t gamma_t(k) * (z^2 - 1)
// laid out mean block first, component-major, dimension-minor. No gradient
// with respect to the priors.
FisherVector encode_fisher(const DiagonalGmm &g, const FrameMatrix &m);

}  // namespace paralin

#endif  // PARALIN_FISHER_HPP_
