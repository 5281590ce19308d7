// core/include/paralin/svm.hpp

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

#ifndef PARALIN_SVM_HPP_
#define PARALIN_SVM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "paralin/feature_table.hpp"
#include "paralin/posterior.hpp"

namespace paralin {

// Sigmoid mapping a decision value f to P = 1 / (1 + exp(a*f + b)).
struct PlattScaling {
  double a = 0.0;
  double b = 0.0;
};

// One-vs-rest linear SVM with per-class Platt calibration. Posteriors are
// the normalized calibrated per-class probabilities.
struct LinearModel {
  std::vector<std::string> class_names;  // sorted
  Matrix weights;                        // K x F
  std::vector<double> biases;            // K
  std::vector<PlattScaling> platt;       // K
  double c_value = 1.0;

  std::size_t feature_dim() const { return weights.cols(); }
};

// Dual coordinate descent on the L2-regularized L1-hinge objective with
// seeded per-epoch shuffling; deterministic given the seed. The bias is an
// augmented constant-1 feature. Requires at least two classes.
LinearModel train_linear_svm(const FeatureTable &x, const std::vector<std::string> &y,
                             double c, std::uint64_t seed);

// w.x + b for every class, in class_names order.
std::vector<double> decision_values(const LinearModel &model, std::span<const double> x);

PosteriorMatrix predict_posteriors(const LinearModel &model, const FeatureTable &x);

// JSON object {format_version, class_names, c_value, weights, biases, platt}.
std::string linear_model_to_json(const LinearModel &m);
LinearModel linear_model_from_json(const std::string &text);

}  // namespace paralin

#endif  // PARALIN_SVM_HPP_
