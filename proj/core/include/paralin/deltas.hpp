// core/include/paralin/deltas.hpp

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

#ifndef PARALIN_DELTAS_HPP_
#define PARALIN_DELTAS_HPP_

#include "paralin/matrix.hpp"

namespace paralin {

// First-order derivatives as the symmetric regression slope
//   delta_t = sum_{w=1..W} w * (x_{t+w} - x_{t-w}) / (2 * sum_{w=1..W} w^2)
// with edge frames replicated. Output has the same T and D.
FrameMatrix compute_deltas(const FrameMatrix &m, int window = 2);

// [x | delta(x)] with 2*D columns, for encoders that take both streams in
// one frame vector.
FrameMatrix append_deltas(const FrameMatrix &m, int window = 2);

}  // namespace paralin

#endif  // PARALIN_DELTAS_HPP_
