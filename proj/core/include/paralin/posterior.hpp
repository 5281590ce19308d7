// core/include/paralin/posterior.hpp

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

#ifndef PARALIN_POSTERIOR_HPP_
#define PARALIN_POSTERIOR_HPP_

#include <string>
#include <vector>

#include "paralin/matrix.hpp"

namespace paralin {

// Per-utterance class probabilities; the unit of fusion and evaluation.
// Every row sums to 1 (within 1e-9) with entries in [0, 1].
struct PosteriorMatrix {
  std::vector<std::string> utterance_ids;
  std::vector<std::string> class_names;
  Matrix probs;  // M x K
};

// Throws if shapes or the row-sum invariant are off.
void validate_posteriors(const PosteriorMatrix &p);

// Predicted label per row: argmax, ties to the lowest class index.
std::vector<std::string> argmax_labels(const PosteriorMatrix &p);

// Posterior CSV: header `utterance_id,<class>,<class>,...`, one row per
// utterance.
PosteriorMatrix load_posteriors(const std::string &path);
void save_posteriors(const PosteriorMatrix &p, const std::string &path);

}  // namespace paralin

#endif  // PARALIN_POSTERIOR_HPP_
