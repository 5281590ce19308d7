// core/src/alignment.cpp

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

#include "paralin/alignment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "paralin/error.hpp"
#include "paralin/numeric_io.hpp"

namespace paralin {

namespace {

// Adjacent decimal timestamps may differ by float noise; anything past this
// counts as a real overlap.
constexpr double kOverlapSlack = 1e-9;

std::vector<std::string> split_ws(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::vector<UtteranceAlignment> parse_alignment(const std::string &path,
                                                const std::set<std::string> &silent_tokens,
                                                const std::set<std::string> &filled_tokens) {
  for (const auto &t : silent_tokens) {
    if (filled_tokens.count(t) > 0) {
      throw ParameterError("token '" + t + "' is in both the silent and the filled set");
    }
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  std::vector<UtteranceAlignment> out;
  std::set<std::string> closed_ids;
  UtteranceAlignment current;
  bool open = false;
  double declared_length = -1.0;
  std::size_t prev_line_no = 0;

  auto close_current = [&](std::size_t line_no) {
    if (!open) return;
    double last_end = current.segments.empty() ? 0.0 : current.segments.back().end();
    if (declared_length >= 0.0) {
      if (declared_length + kOverlapSlack < last_end) {
        throw IntegrityError(path + ": declared length " + format_double(declared_length) +
                             " of utterance '" + current.utterance_id +
                             "' is shorter than its last segment end (line " +
                             std::to_string(line_no) + ")");
      }
      current.total_length = declared_length;
    } else {
      current.total_length = last_end;
    }
    closed_ids.insert(current.utterance_id);
    out.push_back(std::move(current));
    current = UtteranceAlignment{};
    open = false;
    declared_length = -1.0;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    auto fields = split_ws(line);
    if (fields.size() != 4 && !(fields.size() == 3 && fields[1] == "length")) {
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": expected 'id start duration token' or 'id length seconds'");
    }
    const std::string &id = fields[0];
    if (!open || id != current.utterance_id) {
      close_current(line_no);
      if (closed_ids.count(id) > 0) {
        throw FormatError(path + ": line " + std::to_string(line_no) + ": utterance '" + id +
                          "' reappears; alignment lines must be grouped by utterance");
      }
      current.utterance_id = id;
      open = true;
    }

    if (fields.size() == 3) {
      bool ok = false;
      double len = parse_double(fields[2], &ok);
      if (!ok || !(len > 0.0)) {
        throw FormatError(path + ": line " + std::to_string(line_no) + ": invalid length '" +
                          fields[2] + "'");
      }
      declared_length = len;
      prev_line_no = line_no;
      continue;
    }

    AlignmentSegment seg;
    bool ok_start = false, ok_dur = false;
    seg.start = parse_double(fields[1], &ok_start);
    seg.duration = parse_double(fields[2], &ok_dur);
    seg.token = fields[3];
    if (!ok_start || !std::isfinite(seg.start) || seg.start < 0.0) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": invalid start '" +
                        fields[1] + "'");
    }
    if (!ok_dur || !std::isfinite(seg.duration) || seg.duration <= 0.0) {
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": duration must be positive, got '" + fields[2] + "'");
    }
    if (silent_tokens.count(seg.token) > 0) {
      seg.kind = SegmentKind::kSilentPause;
    } else if (filled_tokens.count(seg.token) > 0) {
      seg.kind = SegmentKind::kFilledPause;
    } else {
      seg.kind = SegmentKind::kPhone;
    }

    if (!current.segments.empty()) {
      double prev_end = current.segments.back().end();
      if (seg.start + kOverlapSlack < prev_end) {
        throw IntegrityError(path + ": overlap between line " + std::to_string(prev_line_no) +
                             " and line " + std::to_string(line_no) + " of utterance '" + id +
                             "'");
      }
    }
    current.segments.push_back(std::move(seg));
    prev_line_no = line_no;
  }
  close_current(line_no);
  return out;
}

}  // namespace paralin
