// core/include/paralin/parallel.hpp

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

#ifndef PARALIN_PARALLEL_HPP_
#define PARALIN_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace paralin {

// Runs fn(i) for every i in [0, n). jobs <= 1 runs inline on the calling
// thread. Tasks must be independent: each writes only its own output slot,
// so results cannot depend on the number of workers or on scheduling.
// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn);

}  // namespace paralin

#endif  // PARALIN_PARALLEL_HPP_
