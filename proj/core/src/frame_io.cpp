// core/src/frame_io.cpp

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

#include "paralin/frame_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

FrameMatrix load_frame_matrix(const std::string &path, double frame_step) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  FrameMatrix out;
  out.utterance_id = std::filesystem::path(path).stem().string();
  out.frame_step = frame_step;

  std::string line;
  std::size_t line_no = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    auto cells = split_csv_line(text);
    if (out.frames.rows() > 0 && cells.size() != out.frames.cols()) {
      throw FormatError(path + ": ragged row " + std::to_string(line_no) +
                        " (expected " + std::to_string(out.frames.cols()) +
                        " columns, got " + std::to_string(cells.size()) + ")");
    }
    row.clear();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      bool ok = false;
      double v = parse_double(cells[c], &ok);
      if (!ok || !std::isfinite(v)) {
        throw FormatError(path + ": row " + std::to_string(line_no) + " column " +
                          std::to_string(c + 1) + ": invalid number '" +
                          std::string(cells[c]) + "'");
      }
      row.push_back(v);
    }
    out.frames.append_row(row);
  }
  if (out.frames.rows() == 0) throw FormatError(path + ": no frames");
  return out;
}

void save_frame_matrix(const FrameMatrix &m, const std::string &path) {
  std::string buf;
  buf.reserve(m.frames.rows() * m.frames.cols() * 12);
  for (std::size_t r = 0; r < m.frames.rows(); ++r) {
    auto row = m.frames.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) buf.push_back(',');
      append_double(buf, row[c]);
    }
    buf.push_back('\n');
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace paralin
