// core/include/paralin/fusion.hpp

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

#ifndef PARALIN_FUSION_HPP_
#define PARALIN_FUSION_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paralin/posterior.hpp"

namespace paralin {

// Convex combination weights over per-system posteriors: non-negative,
// summing to 1, so fused outputs stay posteriors.
struct FusionWeights {
  std::vector<std::string> system_names;
  std::vector<double> weights;
};

void validate_fusion_weights(const FusionWeights &w);

// Element-wise weighted mean. All systems must share utterance ids (same
// order) and class names.
PosteriorMatrix fuse_posteriors(std::span<const PosteriorMatrix> systems,
                                const FusionWeights &w);

// All weight vectors on the step lattice of the simplex, enumerated with the
// first system's weight descending from 1; C(1/step + n - 1, n - 1) entries.
std::vector<std::vector<double>> enumerate_weight_lattice(std::size_t n_systems, double step);

// Exhaustive search over the lattice for the weights maximizing
// uar(truth, argmax(fused)). `truth` is aligned with the posterior rows.
// Ties keep the first candidate in enumeration order, which puts the weight
// mass on the earlier systems. Returns the weights and the achieved UAR.
std::pair<FusionWeights, double> grid_search_weights(
    std::span<const PosteriorMatrix> systems, const std::vector<std::string> &truth,
    double step, const std::vector<std::string> &system_names);

}  // namespace paralin

#endif  // PARALIN_FUSION_HPP_
