// core/src/feature_table.cpp

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

#include "paralin/feature_table.hpp"

#include <cmath>
#include <fstream>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

FeatureTable load_feature_table(const std::string &path, const std::string &name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  FeatureTable t;
  t.feature_set_name = name;

  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file, header required");
  auto header = split_csv_line(strip_cr(line));
  if (header.empty() || header[0] != "utterance_id") {
    throw FormatError(path + ": first header column must be 'utterance_id'");
  }
  const std::size_t feat_count = header.size() - 1;
  if (feat_count == 0) throw FormatError(path + ": no feature columns");

  std::size_t line_no = 1;
  std::vector<double> row(feat_count);
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
    std::string id(cells[0]);
    if (id.empty()) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": empty utterance_id");
    }
    for (std::size_t c = 0; c < feat_count; ++c) {
      bool ok = false;
      double v = parse_double(cells[c + 1], &ok);
      if (!ok || !std::isfinite(v)) {
        throw FormatError(path + ": line " + std::to_string(line_no) + " column " +
                          std::to_string(c + 2) + ": invalid number '" +
                          std::string(cells[c + 1]) + "'");
      }
      row[c] = v;
    }
    t.utterance_ids.push_back(std::move(id));
    t.vectors.append_row(row);
  }

  auto index = row_index(t);
  if (index.size() != t.utterance_ids.size()) {
    throw IntegrityError(path + ": duplicate utterance_id");
  }
  return t;
}

void save_feature_table(const FeatureTable &t, const std::string &path) {
  if (t.utterance_ids.size() != t.vectors.rows()) {
    throw DataError("feature table: id count does not match row count");
  }
  std::string buf = "utterance_id";
  for (std::size_t c = 0; c < t.vectors.cols(); ++c) {
    buf += ",f" + std::to_string(c);
  }
  buf.push_back('\n');
  for (std::size_t r = 0; r < t.vectors.rows(); ++r) {
    buf += t.utterance_ids[r];
    for (double v : t.vectors.row(r)) {
      buf.push_back(',');
      append_double(buf, v);
    }
    buf.push_back('\n');
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError(path + ": write failed");
}

std::unordered_map<std::string, std::size_t> row_index(const FeatureTable &t) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(t.utterance_ids.size());
  for (std::size_t i = 0; i < t.utterance_ids.size(); ++i) {
    index.emplace(t.utterance_ids[i], i);
  }
  return index;
}

Matrix select_rows(const FeatureTable &t, const std::vector<std::string> &ids) {
  auto index = row_index(t);
  Matrix out;
  for (const auto &id : ids) {
    auto it = index.find(id);
    if (it == index.end()) {
      std::string name = t.feature_set_name.empty() ? "feature table" : t.feature_set_name;
      throw DataError(name + ": missing utterance '" + id + "'");
    }
    out.append_row(t.vectors.row(it->second));
  }
  return out;
}

}  // namespace paralin
