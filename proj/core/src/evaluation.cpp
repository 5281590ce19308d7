// core/src/evaluation.cpp

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

#include "paralin/evaluation.hpp"

#include <fstream>
#include <map>
#include <set>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto &row : counts) {
    for (std::int64_t v : row) sum += v;
  }
  return sum;
}

ConfusionMatrix confusion_matrix(const std::vector<std::string> &truth,
                                 const std::vector<std::string> &predicted) {
  if (truth.empty()) throw ParameterError("confusion_matrix: empty input");
  if (truth.size() != predicted.size()) {
    throw ParameterError("confusion_matrix: " + std::to_string(truth.size()) +
                         " truth labels vs " + std::to_string(predicted.size()) +
                         " predictions");
  }

  ConfusionMatrix cm;
  std::set<std::string> classes(truth.begin(), truth.end());
  cm.class_names.assign(classes.begin(), classes.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < cm.class_names.size(); ++k) index[cm.class_names[k]] = k;

  cm.counts.assign(cm.class_names.size(),
                   std::vector<std::int64_t>(cm.class_names.size(), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto it = index.find(predicted[i]);
    if (it == index.end()) {
      throw DataError("predicted label '" + predicted[i] + "' is not among the truth classes");
    }
    ++cm.counts[index[truth[i]]][it->second];
  }
  return cm;
}

double uar(const ConfusionMatrix &cm) {
  double sum = 0.0;
  for (std::size_t k = 0; k < cm.class_names.size(); ++k) {
    std::int64_t row_total = 0;
    for (std::int64_t v : cm.counts[k]) row_total += v;
    if (row_total == 0) throw ParameterError("uar: class '" + cm.class_names[k] +
                                             "' has no instances");
    sum += static_cast<double>(cm.counts[k][k]) / static_cast<double>(row_total);
  }
  return sum / static_cast<double>(cm.class_names.size());
}

double uar(const std::vector<std::string> &truth, const std::vector<std::string> &predicted) {
  return uar(confusion_matrix(truth, predicted));
}

std::vector<std::pair<std::string, std::string>> load_label_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file, header required");
  auto header = split_csv_line(strip_cr(line));
  if (header.size() != 2 || header[0] != "utterance_id" || header[1] != "label") {
    throw FormatError(path + ": header must be 'utterance_id,label'");
  }

  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    auto cells = split_csv_line(text);
    if (cells.size() != 2 || cells[0].empty() || cells[1].empty()) {
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": expected 'utterance_id,label'");
    }
    std::string id(cells[0]);
    if (!seen.insert(id).second) {
      throw IntegrityError(path + ": duplicate utterance_id '" + id + "'");
    }
    out.emplace_back(std::move(id), std::string(cells[1]));
  }
  return out;
}

}  // namespace paralin
