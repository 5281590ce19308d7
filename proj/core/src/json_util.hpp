// core/src/json_util.hpp

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

// Internal helpers shared by the JSON serializers. Not installed.

#ifndef PARALIN_SRC_JSON_UTIL_HPP_
#define PARALIN_SRC_JSON_UTIL_HPP_

#include <fstream>
#include <string>

#include <json.hpp>

#include "paralin/error.hpp"
#include "paralin/matrix.hpp"

namespace paralin::detail {

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

inline void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError(path + ": write failed");
}

inline nlohmann::json parse_json(const std::string &text, const std::string &what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError(what + ": invalid JSON");
  return j;
}

inline void check_version(const nlohmann::json &j, const std::string &what) {
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != 1) {
    throw FormatError(what + ": unsupported or missing format_version");
  }
}

inline nlohmann::json matrix_to_json(const Matrix &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json &j, const std::string &what) {
  if (!j.is_array()) throw FormatError(what + ": expected an array of rows");
  Matrix m;
  std::vector<double> row;
  for (const auto &jr : j) {
    if (!jr.is_array()) throw FormatError(what + ": expected an array of rows");
    row.clear();
    for (const auto &v : jr) {
      if (!v.is_number()) throw FormatError(what + ": non-numeric entry");
      row.push_back(v.get<double>());
    }
    m.append_row(row);
  }
  return m;
}

}  // namespace paralin::detail

#endif  // PARALIN_SRC_JSON_UTIL_HPP_
