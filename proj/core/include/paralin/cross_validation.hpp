// core/include/paralin/cross_validation.hpp

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

#ifndef PARALIN_CROSS_VALIDATION_HPP_
#define PARALIN_CROSS_VALIDATION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "paralin/evaluation.hpp"
#include "paralin/feature_table.hpp"
#include "paralin/fusion.hpp"
#include "paralin/manifest.hpp"
#include "paralin/posterior.hpp"

namespace paralin {

// Speaker-level fold assignment: every utterance of a speaker lands in the
// speaker's fold, so no speaker spans train and test.
struct FoldPlan {
  int k = 0;
  std::map<std::string, int> assignment;  // speaker_id -> fold index in [0, k)
};

// Speakers sorted, shuffled by the seed, dealt round-robin into k folds.
FoldPlan make_speaker_folds(const Manifest &m, int k, std::uint64_t seed);

struct CvOptions {
  std::vector<double> c_grid = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
  int repeats = 100;
  double fusion_step = 0.05;
  std::uint64_t seed = 42;
  int jobs = 1;
};

struct SystemEvalResult {
  std::string name;
  double best_c = 0.0;
  std::vector<double> uar_per_fold;  // empty under the dev protocol; NaN = fold had no data
  double pooled_uar = 0.0;
  ConfusionMatrix confusion;
  // Out-of-fold (cv) or dev-set (dev) posteriors at the selected C.
  PosteriorMatrix posteriors;
};

struct EvalReport {
  std::string protocol;  // "cv" or "dev"
  std::string task;
  FoldPlan plan;  // k == 0 under the dev protocol
  std::vector<SystemEvalResult> systems;
  FusionWeights fusion_weights;
  double fusion_uar = 0.0;
  ConfusionMatrix fusion_confusion;
  std::vector<std::string> truth_ids;     // evaluated utterances, manifest order
  std::vector<std::string> truth_labels;  // aligned with truth_ids
};

// Speaker-independent cross-validation over the labeled records of the
// manifest: per fold and system, downsampled ensembles are trained on the
// other folds for every C; per system the C maximizing the pooled
// out-of-fold UAR is selected (ties keep the first grid entry); fusion
// weights are then grid-searched on the pooled out-of-fold posteriors.
// Every labeled utterance must appear in every feature table.
EvalReport run_cv(const Manifest &m,
                  const std::vector<std::pair<std::string, FeatureTable>> &systems,
                  const std::string &task, const FoldPlan &plan, const CvOptions &options);

// Train-on-train, tune-on-dev variant of the same report.
EvalReport run_dev_protocol(const Manifest &m,
                            const std::vector<std::pair<std::string, FeatureTable>> &systems,
                            const std::string &task, const CvOptions &options);

std::string report_to_json(const EvalReport &r);

// Plain-text summary table, one line per system plus the fusion line.
std::string report_summary(const EvalReport &r);

}  // namespace paralin

#endif  // PARALIN_CROSS_VALIDATION_HPP_
