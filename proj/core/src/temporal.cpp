// core/src/temporal.cpp

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

#include "paralin/temporal.hpp"

#include "paralin/error.hpp"

namespace paralin {

std::array<double, TemporalFeatureVector::kCount> TemporalFeatureVector::to_array() const {
  return {speech_tempo,
          articulation_rate,
          silent.occurrence_rate,
          silent.duration_rate,
          silent.frequency,
          silent.average_duration,
          filled.occurrence_rate,
          filled.duration_rate,
          filled.frequency,
          filled.average_duration,
          any.occurrence_rate,
          any.duration_rate,
          any.frequency,
          any.average_duration};
}

const std::array<std::string, TemporalFeatureVector::kCount> &TemporalFeatureVector::names() {
  static const std::array<std::string, kCount> kNames = {
      "speech_tempo",
      "articulation_rate",
      "silent_pause_occurrence_rate",
      "silent_pause_duration_rate",
      "silent_pause_frequency",
      "silent_average_pause_duration",
      "filled_pause_occurrence_rate",
      "filled_pause_duration_rate",
      "filled_pause_frequency",
      "filled_average_pause_duration",
      "any_pause_occurrence_rate",
      "any_pause_duration_rate",
      "any_pause_frequency",
      "any_average_pause_duration"};
  return kNames;
}

namespace {

PauseScopeFeatures scope_features(double pause_count, double pause_duration,
                                  double phone_count, double total_length) {
  PauseScopeFeatures f;
  f.occurrence_rate = phone_count > 0.0 ? pause_count / phone_count : 0.0;
  f.duration_rate = pause_duration / total_length;
  f.frequency = pause_count / total_length;
  f.average_duration = pause_count > 0.0 ? pause_duration / pause_count : 0.0;
  return f;
}

}  // namespace

TemporalFeatureVector compute_temporal_features(const UtteranceAlignment &a) {
  if (!(a.total_length > 0.0)) {
    throw ParameterError("compute_temporal_features: utterance '" + a.utterance_id +
                         "' has non-positive total length");
  }

  double phone_count = 0.0;
  double silent_count = 0.0, silent_dur = 0.0;
  double filled_count = 0.0, filled_dur = 0.0;
  for (const auto &seg : a.segments) {
    switch (seg.kind) {
      case SegmentKind::kPhone:
        phone_count += 1.0;
        break;
      case SegmentKind::kSilentPause:
        silent_count += 1.0;
        silent_dur += seg.duration;
        break;
      case SegmentKind::kFilledPause:
        filled_count += 1.0;
        filled_dur += seg.duration;
        break;
    }
  }

  TemporalFeatureVector out;
  // Filled pauses count as phones for tempo; silences never do.
  out.speech_tempo = (phone_count + filled_count) / a.total_length;
  double speech_time = a.total_length - silent_dur - filled_dur;
  out.articulation_rate = speech_time > 0.0 ? phone_count / speech_time : 0.0;
  out.silent = scope_features(silent_count, silent_dur, phone_count, a.total_length);
  out.filled = scope_features(filled_count, filled_dur, phone_count, a.total_length);
  out.any = scope_features(silent_count + filled_count, silent_dur + filled_dur, phone_count,
                           a.total_length);
  return out;
}

}  // namespace paralin
