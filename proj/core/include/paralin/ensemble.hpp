// core/include/paralin/ensemble.hpp

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

#ifndef PARALIN_ENSEMBLE_HPP_
#define PARALIN_ENSEMBLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "paralin/svm.hpp"

namespace paralin {

// Class-balanced downsampled SVM ensemble: each member trains on a fresh
// balanced subsample, predictions are the unweighted mean of the member
// posteriors.
struct EnsembleModel {
  std::vector<LinearModel> members;
  int repeats = 0;
  std::uint64_t seed = 0;
};

// For each repeat, every class is downsampled without replacement to the
// minority-class count; the subsample and the member training are seeded by
// (seed, repeat), so results do not depend on scheduling or on `jobs`.
EnsembleModel train_downsampled_ensemble(const FeatureTable &x,
                                         const std::vector<std::string> &y, double c,
                                         int repeats, std::uint64_t seed, int jobs = 1);

// Balanced subsample row indices for one repeat, ascending; exposed so the
// draw itself is testable.
std::vector<std::size_t> downsample_indices(const std::vector<std::string> &y,
                                            std::uint64_t seed, int repeat);

// Element-wise mean of the member posterior matrices.
PosteriorMatrix predict_ensemble(const EnsembleModel &e, const FeatureTable &x,
                                 int jobs = 1);

// JSON object {format_version, repeats, seed, members}.
std::string ensemble_to_json(const EnsembleModel &e);
EnsembleModel ensemble_from_json(const std::string &text);
void save_ensemble(const EnsembleModel &e, const std::string &path);
EnsembleModel load_ensemble(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_ENSEMBLE_HPP_
