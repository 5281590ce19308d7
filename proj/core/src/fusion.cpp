// core/src/fusion.cpp

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

#include "paralin/fusion.hpp"

#include <cmath>

#include "paralin/error.hpp"
#include "paralin/evaluation.hpp"

namespace paralin {

void validate_fusion_weights(const FusionWeights &w) {
  if (w.weights.empty()) throw ParameterError("fusion: no weights");
  if (!w.system_names.empty() && w.system_names.size() != w.weights.size()) {
    throw ParameterError("fusion: system name count does not match weight count");
  }
  double sum = 0.0;
  for (double v : w.weights) {
    if (!(v >= 0.0)) throw ParameterError("fusion: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ParameterError("fusion: weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

namespace {

void check_aligned(std::span<const PosteriorMatrix> systems) {
  if (systems.empty()) throw ParameterError("fusion: no posterior matrices");
  const auto &first = systems.front();
  for (std::size_t s = 1; s < systems.size(); ++s) {
    if (systems[s].utterance_ids != first.utterance_ids) {
      throw DataError("fusion: system " + std::to_string(s + 1) +
                      " disagrees on utterance ids or their order");
    }
    if (systems[s].class_names != first.class_names) {
      throw DataError("fusion: system " + std::to_string(s + 1) + " disagrees on class names");
    }
  }
}

}  // namespace

PosteriorMatrix fuse_posteriors(std::span<const PosteriorMatrix> systems,
                                const FusionWeights &w) {
  check_aligned(systems);
  validate_fusion_weights(w);
  if (w.weights.size() != systems.size()) {
    throw ParameterError("fusion: " + std::to_string(w.weights.size()) + " weights for " +
                         std::to_string(systems.size()) + " systems");
  }

  PosteriorMatrix out;
  out.utterance_ids = systems.front().utterance_ids;
  out.class_names = systems.front().class_names;
  out.probs = Matrix(systems.front().probs.rows(), systems.front().probs.cols());
  for (std::size_t s = 0; s < systems.size(); ++s) {
    double weight = w.weights[s];
    if (weight == 0.0) continue;
    const auto &src = systems[s].probs.data();
    auto &dst = out.probs.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += weight * src[i];
  }
  return out;
}

std::vector<std::vector<double>> enumerate_weight_lattice(std::size_t n_systems, double step) {
  if (n_systems == 0) throw ParameterError("weight lattice: no systems");
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("weight lattice: step outside (0, 1]");
  const auto denom = static_cast<long long>(std::llround(1.0 / step));
  if (std::abs(denom * step - 1.0) > 1e-9) {
    throw ParameterError("weight lattice: step must divide 1 evenly");
  }

  std::vector<std::vector<double>> out;
  std::vector<long long> counts(n_systems, 0);
  // First position descending, so [1, 0, ...] is enumerated first.
  auto recurse = [&](auto &&self, std::size_t pos, long long remaining) -> void {
    if (pos + 1 == n_systems) {
      counts[pos] = remaining;
      std::vector<double> w(n_systems);
      for (std::size_t i = 0; i < n_systems; ++i) {
        w[i] = static_cast<double>(counts[i]) / static_cast<double>(denom);
      }
      out.push_back(std::move(w));
      return;
    }
    for (long long c = remaining; c >= 0; --c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, denom);
  return out;
}

std::pair<FusionWeights, double> grid_search_weights(
    std::span<const PosteriorMatrix> systems, const std::vector<std::string> &truth,
    double step, const std::vector<std::string> &system_names) {
  check_aligned(systems);
  if (systems.size() > 5) {
    throw ParameterError("grid_search_weights: more than 5 systems is combinatorially unsupported");
  }
  const std::size_t m = systems.front().probs.rows();
  const std::size_t k = systems.front().probs.cols();
  if (truth.size() != m) {
    throw ParameterError("grid_search_weights: truth count does not match posterior rows");
  }

  auto lattice = enumerate_weight_lattice(systems.size(), step);

  std::vector<std::string> predicted(m);
  std::vector<double> fused(k);
  double best_uar = -1.0;
  std::vector<double> best_weights;

  for (const auto &weights : lattice) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < k; ++c) fused[c] = 0.0;
      for (std::size_t s = 0; s < systems.size(); ++s) {
        if (weights[s] == 0.0) continue;
        auto row = systems[s].probs.row(r);
        for (std::size_t c = 0; c < k; ++c) fused[c] += weights[s] * row[c];
      }
      std::size_t best_class = 0;
      for (std::size_t c = 1; c < k; ++c) {
        if (fused[c] > fused[best_class]) best_class = c;
      }
      predicted[r] = systems.front().class_names[best_class];
    }
    double score = uar(truth, predicted);
    if (score > best_uar) {
      best_uar = score;
      best_weights = weights;
    }
  }

  FusionWeights w;
  w.system_names = system_names;
  w.weights = std::move(best_weights);
  return {std::move(w), best_uar};
}

}  // namespace paralin
