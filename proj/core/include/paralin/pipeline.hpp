// core/include/paralin/pipeline.hpp

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

#ifndef PARALIN_PIPELINE_HPP_
#define PARALIN_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "paralin/boaw.hpp"
#include "paralin/feature_table.hpp"
#include "paralin/fisher.hpp"
#include "paralin/gmm.hpp"
#include "paralin/manifest.hpp"
#include "paralin/standardize.hpp"

namespace paralin {

// Where per-utterance frame files come from. With frames_dir set, frames
// are read from <frames_dir>/<utterance_id>.csv (the layout the staging
// subcommands write); otherwise from the manifest's frame_feature_path,
// resolved against the manifest directory.
struct FrameSource {
  std::string manifest_dir;
  std::string frames_dir;  // empty = use manifest paths
  double frame_step = 0.010;
};

std::string frame_path_for(const FrameSource &src, const UtteranceRecord &rec);
FrameMatrix load_frames(const FrameSource &src, const UtteranceRecord &rec);

// Frames of the selected records pooled in manifest order.
Matrix pool_frames(const Manifest &m, const FrameSource &src,
                   const std::vector<Split> &splits, int jobs);

// Per-utterance BoAW encodings over the whole manifest, one row per record
// in manifest order. With a delta codebook, the delta stream is read from
// *delta_src when given and otherwise computed with `delta_window`.
FeatureTable encode_boaw_table(const Manifest &m, const FrameSource &src, const Codebook &cb,
                               const Codebook *delta_cb, const FrameSource *delta_src,
                               int delta_window, int assignments, int jobs,
                               const std::string &name);

// Per-utterance Fisher vectors over the whole manifest.
FeatureTable encode_fisher_table(const Manifest &m, const FrameSource &src,
                                 const DiagonalGmm &g, int jobs, const std::string &name);

std::vector<Split> parse_split_list(const std::string &csv);

}  // namespace paralin

#endif  // PARALIN_PIPELINE_HPP_
