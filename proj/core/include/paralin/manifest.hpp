// core/include/paralin/manifest.hpp

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

#ifndef PARALIN_MANIFEST_HPP_
#define PARALIN_MANIFEST_HPP_

#include <map>
#include <string>
#include <vector>

namespace paralin {

enum class Split { kTrain, kDev, kTest };

std::string to_string(Split s);
Split split_from_string(const std::string &s);  // throws FormatError

struct UtteranceRecord {
  std::string utterance_id;
  std::string speaker_id;
  Split split = Split::kTrain;
  // task name -> class label; populated for train/dev rows.
  std::map<std::string, std::string> labels;
  std::string frame_feature_path;  // empty = absent
  std::string alignment_id;        // empty = absent
  // system name -> utterance-level feature file, from extfeat:<name> columns.
  std::map<std::string, std::string> external_feature_paths;

  bool alignment_present() const { return !alignment_id.empty(); }
  bool has_label(const std::string &task) const { return labels.count(task) > 0; }
};

// Manifest CSV: UTF-8, comma separated, header required. Required columns
// utterance_id, speaker_id, split; optional frame_feature_path, alignment_id,
// extfeat:<system> columns, and one column per task label. Empty cell means
// absent. No quoting rules, so cell values cannot contain commas.
struct Manifest {
  std::vector<UtteranceRecord> records;
  std::vector<std::string> task_names;
  // Directory of the source file; relative frame/feature paths resolve
  // against it. Not part of the format.
  std::string directory;
};

Manifest load_manifest(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_MANIFEST_HPP_
