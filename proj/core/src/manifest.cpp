// core/src/manifest.cpp

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

#include "paralin/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

std::string to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split split_from_string(const std::string &s) {
  if (s == "train") return Split::kTrain;
  if (s == "dev") return Split::kDev;
  if (s == "test") return Split::kTest;
  throw FormatError("invalid split '" + s + "' (expected train, dev or test)");
}

namespace {

constexpr std::string_view kExtfeatPrefix = "extfeat:";

std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && s.substr(0, 3) == "\xef\xbb\xbf") s.remove_prefix(3);
  return s;
}

}  // namespace

Manifest load_manifest(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file, header row required");
  auto header = split_csv_line(strip_bom(strip_cr(line)));

  int col_id = -1, col_speaker = -1, col_split = -1, col_frames = -1, col_alignment = -1;
  std::vector<std::pair<int, std::string>> task_cols;
  std::vector<std::pair<int, std::string>> extfeat_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name(header[c]);
    if (name == "utterance_id") col_id = static_cast<int>(c);
    else if (name == "speaker_id") col_speaker = static_cast<int>(c);
    else if (name == "split") col_split = static_cast<int>(c);
    else if (name == "frame_feature_path") col_frames = static_cast<int>(c);
    else if (name == "alignment_id") col_alignment = static_cast<int>(c);
    else if (name.starts_with(kExtfeatPrefix))
      extfeat_cols.emplace_back(static_cast<int>(c), name.substr(kExtfeatPrefix.size()));
    else if (!name.empty())
      task_cols.emplace_back(static_cast<int>(c), name);
  }
  if (col_id < 0) throw FormatError(path + ": missing required column 'utterance_id'");
  if (col_speaker < 0) throw FormatError(path + ": missing required column 'speaker_id'");
  if (col_split < 0) throw FormatError(path + ": missing required column 'split'");

  Manifest m;
  m.directory = std::filesystem::path(path).parent_path().string();
  for (const auto &[c, name] : task_cols) m.task_names.push_back(name);

  std::set<std::string> seen_ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    auto cells = split_csv_line(text);
    if (cells.size() != header.size()) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    }
    auto cell = [&](int c) { return std::string(cells[static_cast<std::size_t>(c)]); };

    UtteranceRecord rec;
    rec.utterance_id = cell(col_id);
    if (rec.utterance_id.empty()) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": empty utterance_id");
    }
    if (!seen_ids.insert(rec.utterance_id).second) {
      throw IntegrityError(path + ": duplicate utterance_id '" + rec.utterance_id +
                           "' (line " + std::to_string(line_no) + ")");
    }
    rec.speaker_id = cell(col_speaker);
    if (rec.speaker_id.empty()) {
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": empty speaker_id for utterance '" + rec.utterance_id + "'");
    }
    try {
      rec.split = split_from_string(cell(col_split));
    } catch (const FormatError &e) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    if (col_frames >= 0) rec.frame_feature_path = cell(col_frames);
    if (col_alignment >= 0) rec.alignment_id = cell(col_alignment);
    for (const auto &[c, name] : extfeat_cols) {
      std::string v = cell(c);
      if (!v.empty()) rec.external_feature_paths[name] = v;
    }
    bool needs_labels = rec.split != Split::kTest;
    for (const auto &[c, name] : task_cols) {
      std::string v = cell(c);
      if (!v.empty()) {
        rec.labels[name] = v;
      } else if (needs_labels) {
        throw FormatError(path + ": line " + std::to_string(line_no) + ": missing label " +
                          name + " for utterance '" + rec.utterance_id + "'");
      }
    }
    m.records.push_back(std::move(rec));
  }
  return m;
}

}  // namespace paralin
