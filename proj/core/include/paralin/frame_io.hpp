// core/include/paralin/frame_io.hpp

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

#ifndef PARALIN_FRAME_IO_HPP_
#define PARALIN_FRAME_IO_HPP_

#include <string>

#include "paralin/matrix.hpp"

namespace paralin {

// Frame-matrix CSV: no header, one frame per row, comma-separated decimal
// numbers. The utterance_id is taken from the file stem; callers that know
// better overwrite it.
FrameMatrix load_frame_matrix(const std::string &path, double frame_step = 0.010);

// Writes with shortest round-trip formatting; load(save(m)) is bit-identical.
void save_frame_matrix(const FrameMatrix &m, const std::string &path);

}  // namespace paralin

#endif  // PARALIN_FRAME_IO_HPP_
