// core/src/posterior.cpp

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

#include "paralin/posterior.hpp"

#include <cmath>
#include <fstream>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

void validate_posteriors(const PosteriorMatrix &p) {
  if (p.utterance_ids.size() != p.probs.rows()) {
    throw DataError("posteriors: id count does not match row count");
  }
  if (p.class_names.size() != p.probs.cols()) {
    throw DataError("posteriors: class count does not match column count");
  }
  for (std::size_t r = 0; r < p.probs.rows(); ++r) {
    double sum = 0.0;
    for (double v : p.probs.row(r)) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DataError("posteriors: entry outside [0, 1] in row of utterance '" +
                        p.utterance_ids[r] + "'");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw DataError("posteriors: row of utterance '" + p.utterance_ids[r] +
                      "' sums to " + format_double(sum));
    }
  }
}

std::vector<std::string> argmax_labels(const PosteriorMatrix &p) {
  std::vector<std::string> out;
  out.reserve(p.probs.rows());
  for (std::size_t r = 0; r < p.probs.rows(); ++r) {
    auto row = p.probs.row(r);
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    out.push_back(p.class_names[best]);
  }
  return out;
}

PosteriorMatrix load_posteriors(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  PosteriorMatrix p;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file, header required");
  auto header = split_csv_line(strip_cr(line));
  if (header.size() < 2 || header[0] != "utterance_id") {
    throw FormatError(path + ": header must be 'utterance_id,<class>,...'");
  }
  for (std::size_t c = 1; c < header.size(); ++c) p.class_names.emplace_back(header[c]);

  std::size_t line_no = 1;
  std::vector<double> row(p.class_names.size());
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
    for (std::size_t c = 0; c < row.size(); ++c) {
      bool ok = false;
      row[c] = parse_double(cells[c + 1], &ok);
      if (!ok) {
        throw FormatError(path + ": line " + std::to_string(line_no) + ": invalid number '" +
                          std::string(cells[c + 1]) + "'");
      }
    }
    p.utterance_ids.emplace_back(cells[0]);
    p.probs.append_row(row);
  }
  validate_posteriors(p);
  return p;
}

void save_posteriors(const PosteriorMatrix &p, const std::string &path) {
  validate_posteriors(p);
  std::string buf = "utterance_id";
  for (const auto &c : p.class_names) {
    buf.push_back(',');
    buf += c;
  }
  buf.push_back('\n');
  for (std::size_t r = 0; r < p.probs.rows(); ++r) {
    buf += p.utterance_ids[r];
    for (double v : p.probs.row(r)) {
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

}  // namespace paralin
