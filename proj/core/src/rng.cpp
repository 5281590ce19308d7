// core/src/rng.cpp

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

#include "paralin/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paralin {

namespace {

// std::seed_seq consumes 32-bit words and is fully specified by the
// standard, so seeding stays portable.
std::mt19937_64 make_engine(const std::vector<std::uint32_t> &words) {
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

void push_u64(std::vector<std::uint32_t> &words, std::uint64_t v) {
  words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  words.push_back(static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : Rng(seed, {}) {}

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  push_u64(words, seed);
  for (std::uint64_t s : stream) push_u64(words, s);
  engine_ = make_engine(words);
}

std::uint64_t Rng::next_u64() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // Rejection sampling over the largest multiple of n.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double Rng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> Rng::sample_indices(std::size_t population, std::size_t count) {
  if (count > population) count = population;
  std::vector<std::size_t> idx(population);
  for (std::size_t i = 0; i < population; ++i) idx[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(below(population - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace paralin
