// core/include/paralin/gmm.hpp

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

#ifndef PARALIN_GMM_HPP_
#define PARALIN_GMM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paralin/matrix.hpp"

namespace paralin {

// Standard deviations never drop below this after an M step; keeps
// components from collapsing on duplicated frames.
inline constexpr double kGmmStdFloor = 1e-3;

// Diagonal-covariance Gaussian mixture.
struct DiagonalGmm {
  std::vector<double> weights;  // K, positive, sums to 1
  Matrix means;                 // K x D
  Matrix stds;                  // K x D, entries >= kGmmStdFloor
  std::uint64_t seed = 0;
  double final_loglik = 0.0;    // last per-frame average log-likelihood

  std::size_t components() const { return weights.size(); }
  std::size_t dim() const { return means.cols(); }
  // Stable identifier recorded on encodings produced from this model.
  std::string model_id() const;
};

struct GmmFitOptions {
  int max_iter = 100;
  double tol = 1e-6;  // per-frame average log-likelihood improvement
  int jobs = 1;
  // When set, receives the per-frame average log-likelihood of each
  // iteration (non-decreasing under exact EM).
  std::vector<double> *loglik_trace = nullptr;
};

// EM estimation. Initialization: means are k frames sampled without
// replacement (seeded), stds the global per-dimension standard deviation,
// weights uniform. Deterministic given (frames, k, seed, options), for any
// jobs value.
DiagonalGmm fit_gmm(const Matrix &frames, std::size_t k, std::uint64_t seed,
                    const GmmFitOptions &options = {});

// Per-frame average log-likelihood (1/T) sum_t log sum_k w_k N(x_t),
// evaluated with log-sum-exp.
double gmm_loglik(const DiagonalGmm &g, const FrameMatrix &m);
double gmm_loglik(const DiagonalGmm &g, const Matrix &frames);

// Posterior component memberships gamma_k for one frame; sums to 1.
// Computed in log space, so far tails cannot underflow to 0/0.
std::vector<double> responsibilities(const DiagonalGmm &g, std::span<const double> frame);

// Precomputed per-component constants for repeated density evaluations.
class GmmScorer {
 public:
  explicit GmmScorer(const DiagonalGmm &g);

  // log w_k + log N(x; mu_k, sigma_k^2) for every component.
  void log_weighted_densities(std::span<const double> frame, std::span<double> out) const;
  // Responsibilities into `out`; returns the frame log-likelihood.
  double responsibilities(std::span<const double> frame, std::span<double> out) const;
  double frame_loglik(std::span<const double> frame) const;

  const DiagonalGmm &model() const { return *gmm_; }

 private:
  const DiagonalGmm *gmm_;
  std::vector<double> log_const_;  // per component
  std::vector<double> inv_std_;    // K x D, row-major
};

// JSON object {format_version, seed, weights, means, stds, final_loglik}.
std::string gmm_to_json(const DiagonalGmm &g);
DiagonalGmm gmm_from_json(const std::string &text);
void save_gmm(const DiagonalGmm &g, const std::string &path);
DiagonalGmm load_gmm(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_GMM_HPP_
