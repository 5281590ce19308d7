// core/include/paralin/feature_table.hpp

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

#ifndef PARALIN_FEATURE_TABLE_HPP_
#define PARALIN_FEATURE_TABLE_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "paralin/matrix.hpp"

namespace paralin {

// Fixed-length utterance-level vectors: one row per utterance. The common
// carrier for BoAW, Fisher vector, temporal and external feature sets.
struct FeatureTable {
  std::vector<std::string> utterance_ids;
  Matrix vectors;  // M x F
  std::string feature_set_name;
};

// Feature-table CSV: header `utterance_id,f0,f1,...`, one utterance per row.
FeatureTable load_feature_table(const std::string &path, const std::string &name = "");
void save_feature_table(const FeatureTable &t, const std::string &path);

// utterance_id -> row index.
std::unordered_map<std::string, std::size_t> row_index(const FeatureTable &t);

// Rows for the given ids, in the given order; throws DataError naming the
// first missing utterance.
Matrix select_rows(const FeatureTable &t, const std::vector<std::string> &ids);

}  // namespace paralin

#endif  // PARALIN_FEATURE_TABLE_HPP_
