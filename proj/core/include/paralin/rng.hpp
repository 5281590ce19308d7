// core/include/paralin/rng.hpp

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

#ifndef PARALIN_RNG_HPP_
#define PARALIN_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace paralin {

// Deterministic pseudo-random source. Draws go through explicit rejection
// sampling and Fisher-Yates shuffles instead of std distributions, whose
// output is implementation-defined; the same seed therefore reproduces the
// same sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  // Independent substream keyed by (seed, stream ids), e.g. one stream per
  // ensemble member so results do not depend on scheduling.
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

  std::uint64_t next_u64();

  // Uniform integer in [0, n); n must be > 0. Unbiased.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [0, 1).
  double unit();

  // Standard normal deviate (Box-Muller).
  double normal();

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // `count` distinct indices drawn uniformly from [0, population), in the
  // order the partial Fisher-Yates shuffle produces them. count is clamped
  // to the population size.
  std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

// Cheap stateless mixer for deriving child seeds (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace paralin

#endif  // PARALIN_RNG_HPP_
