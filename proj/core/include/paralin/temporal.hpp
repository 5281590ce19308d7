// core/include/paralin/temporal.hpp

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

#ifndef PARALIN_TEMPORAL_HPP_
#define PARALIN_TEMPORAL_HPP_

#include <array>
#include <string>
#include <vector>

#include "paralin/alignment.hpp"

namespace paralin {

// Per-scope pause statistics. occurrence_rate is pauses per phone,
// duration_rate pause time per utterance time, frequency pauses per second,
// average_duration seconds per pause.
struct PauseScopeFeatures {
  double occurrence_rate = 0.0;
  double duration_rate = 0.0;
  double frequency = 0.0;
  double average_duration = 0.0;
};

// The 14 temporal speech parameters of one utterance. Division-by-zero
// policy: any undefined ratio is 0 so downstream classifiers always see
// finite values.
struct TemporalFeatureVector {
  double speech_tempo = 0.0;       // phones incl. filled pauses, per second
  double articulation_rate = 0.0;  // phones per second of speech time
  PauseScopeFeatures silent;
  PauseScopeFeatures filled;
  PauseScopeFeatures any;

  static constexpr std::size_t kCount = 14;
  std::array<double, kCount> to_array() const;
  static const std::array<std::string, kCount> &names();
};

// Requires a.total_length > 0.
TemporalFeatureVector compute_temporal_features(const UtteranceAlignment &a);

}  // namespace paralin

#endif  // PARALIN_TEMPORAL_HPP_
