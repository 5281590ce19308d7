// core/include/paralin/alignment.hpp

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

#ifndef PARALIN_ALIGNMENT_HPP_
#define PARALIN_ALIGNMENT_HPP_

#include <set>
#include <string>
#include <vector>

namespace paralin {

enum class SegmentKind { kPhone, kSilentPause, kFilledPause };

struct AlignmentSegment {
  double start = 0.0;     // seconds
  double duration = 0.0;  // seconds, > 0
  std::string token;
  SegmentKind kind = SegmentKind::kPhone;

  double end() const { return start + duration; }
};

// Time-ordered, non-overlapping phone-level segmentation of one utterance.
struct UtteranceAlignment {
  std::string utterance_id;
  std::vector<AlignmentSegment> segments;
  double total_length = 0.0;  // >= end of last segment
};

// Alignment file: one segment per line,
//   utterance_id start_seconds duration_seconds token
// whitespace separated, lines grouped contiguously per utterance, '#' starts
// a comment line. A line `utterance_id length seconds` overrides the total
// length (which otherwise is the end of the last segment). Tokens in
// silent_tokens become silent pauses, tokens in filled_tokens filled pauses,
// everything else a phone; the two sets must be disjoint.
std::vector<UtteranceAlignment> parse_alignment(const std::string &path,
                                                const std::set<std::string> &silent_tokens,
                                                const std::set<std::string> &filled_tokens);

}  // namespace paralin

#endif  // PARALIN_ALIGNMENT_HPP_
