// core/src/pipeline.cpp

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

#include "paralin/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "paralin/deltas.hpp"
#include "paralin/error.hpp"
#include "paralin/frame_io.hpp"
#include "paralin/parallel.hpp"

namespace paralin {

namespace fs = std::filesystem;

std::string frame_path_for(const FrameSource &src, const UtteranceRecord &rec) {
  if (!src.frames_dir.empty()) {
    return (fs::path(src.frames_dir) / (rec.utterance_id + ".csv")).string();
  }
  if (rec.frame_feature_path.empty()) {
    throw DataError("utterance '" + rec.utterance_id +
                    "' has no frame_feature_path and no --frames-dir was given");
  }
  fs::path p(rec.frame_feature_path);
  if (p.is_absolute() || src.manifest_dir.empty()) return p.string();
  return (fs::path(src.manifest_dir) / p).string();
}

FrameMatrix load_frames(const FrameSource &src, const UtteranceRecord &rec) {
  FrameMatrix m = load_frame_matrix(frame_path_for(src, rec), src.frame_step);
  m.utterance_id = rec.utterance_id;
  return m;
}

Matrix pool_frames(const Manifest &m, const FrameSource &src,
                   const std::vector<Split> &splits, int jobs) {
  std::vector<const UtteranceRecord *> selected;
  for (const auto &rec : m.records) {
    if (std::find(splits.begin(), splits.end(), rec.split) != splits.end()) {
      selected.push_back(&rec);
    }
  }
  if (selected.empty()) throw ParameterError("no records in the requested splits");

  std::vector<Matrix> loaded(selected.size());
  parallel_for(selected.size(), jobs,
               [&](std::size_t i) { loaded[i] = load_frames(src, *selected[i]).frames; });

  Matrix pooled;
  for (auto &part : loaded) pooled.append_rows(part);
  return pooled;
}

FeatureTable encode_boaw_table(const Manifest &m, const FrameSource &src, const Codebook &cb,
                               const Codebook *delta_cb, const FrameSource *delta_src,
                               int delta_window, int assignments, int jobs,
                               const std::string &name) {
  FeatureTable out;
  out.feature_set_name = name;
  const std::size_t n = m.records.size();
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    const auto &rec = m.records[i];
    FrameMatrix frames = load_frames(src, rec);
    if (delta_cb == nullptr) {
      rows[i] = encode_boaw(cb, frames, assignments);
      return;
    }
    FrameMatrix deltas = delta_src != nullptr ? load_frames(*delta_src, rec)
                                              : compute_deltas(frames, delta_window);
    rows[i] = encode_boaw_paired(cb, *delta_cb, frames, deltas, assignments);
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.utterance_ids.push_back(m.records[i].utterance_id);
    out.vectors.append_row(rows[i]);
  }
  return out;
}

FeatureTable encode_fisher_table(const Manifest &m, const FrameSource &src,
                                 const DiagonalGmm &g, int jobs, const std::string &name) {
  FeatureTable out;
  out.feature_set_name = name;
  const std::size_t n = m.records.size();
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    FrameMatrix frames = load_frames(src, m.records[i]);
    rows[i] = encode_fisher(g, frames).values;
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.utterance_ids.push_back(m.records[i].utterance_id);
    out.vectors.append_row(rows[i]);
  }
  return out;
}

std::vector<Split> parse_split_list(const std::string &csv) {
  std::vector<Split> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t pos = csv.find(',', start);
    std::string item = csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!item.empty()) out.push_back(split_from_string(item));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw ParameterError("empty split list");
  return out;
}

}  // namespace paralin
