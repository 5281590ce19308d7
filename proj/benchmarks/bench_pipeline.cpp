// benchmarks/bench_pipeline.cpp

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

// Microbenchmarks for the hot encoding and training paths, dimensioned
// around the 65-attribute frame features the encoders usually see.

#include <benchmark/benchmark.h>

#include "paralin/boaw.hpp"
#include "paralin/deltas.hpp"
#include "paralin/fisher.hpp"
#include "paralin/fusion.hpp"
#include "paralin/gmm.hpp"
#include "paralin/rng.hpp"
#include "paralin/svm.hpp"

using namespace paralin;

namespace {

Matrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double &v : m.data()) v = rng.normal();
  return m;
}

FrameMatrix random_utterance(Rng &rng, std::size_t t_count, std::size_t dim) {
  FrameMatrix m;
  m.utterance_id = "bench";
  m.frames = random_matrix(rng, t_count, dim);
  return m;
}

}  // namespace

static void BM_EncodeBoaw(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Codebook cb;
  cb.centroids = random_matrix(rng, n, 65);
  FrameMatrix utt = random_utterance(rng, 500, 65);
  for (auto _ : state) {
    auto v = encode_boaw(cb, utt, 5);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_EncodeBoaw)->Arg(128)->Arg(512)->Arg(2048);

static void BM_ComputeDeltas(benchmark::State &state) {
  Rng rng(2);
  FrameMatrix utt = random_utterance(rng, 500, 65);
  for (auto _ : state) {
    FrameMatrix d = compute_deltas(utt, 2);
    benchmark::DoNotOptimize(d.frames.data().data());
  }
}
BENCHMARK(BM_ComputeDeltas);

static void BM_FitGmm(benchmark::State &state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  Matrix pool = random_matrix(rng, 8000, 32);
  for (auto _ : state) {
    GmmFitOptions opts;
    opts.max_iter = 10;
    DiagonalGmm g = fit_gmm(pool, k, 7, opts);
    benchmark::DoNotOptimize(g.final_loglik);
  }
}
BENCHMARK(BM_FitGmm)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_EncodeFisher(benchmark::State &state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  Matrix pool = random_matrix(rng, 4000, 65);
  GmmFitOptions opts;
  opts.max_iter = 5;
  DiagonalGmm g = fit_gmm(pool, k, 7, opts);
  FrameMatrix utt = random_utterance(rng, 500, 65);
  for (auto _ : state) {
    FisherVector fv = encode_fisher(g, utt);
    benchmark::DoNotOptimize(fv.values.data());
  }
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_EncodeFisher)->Arg(8)->Arg(64);

static void BM_TrainLinearSvm(benchmark::State &state) {
  Rng rng(5);
  FeatureTable t;
  std::vector<std::string> y;
  for (int i = 0; i < 200; ++i) {
    t.utterance_ids.push_back("u" + std::to_string(i));
    std::vector<double> row(128);
    double shift = i % 2 == 0 ? -2.0 : 2.0;
    for (double &v : row) v = shift + rng.normal();
    t.vectors.append_row(row);
    y.push_back(i % 2 == 0 ? "a" : "b");
  }
  for (auto _ : state) {
    LinearModel m = train_linear_svm(t, y, 1.0, 7);
    benchmark::DoNotOptimize(m.biases.data());
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_TrainLinearSvm);

static void BM_GridSearchWeights(benchmark::State &state) {
  const auto systems = static_cast<std::size_t>(state.range(0));
  Rng rng(6);
  std::vector<std::string> ids, truth;
  std::vector<std::string> classes{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    ids.push_back("u" + std::to_string(i));
    truth.push_back(classes[rng.below(3)]);
  }
  std::vector<PosteriorMatrix> posts;
  for (std::size_t s = 0; s < systems; ++s) {
    PosteriorMatrix p;
    p.utterance_ids = ids;
    p.class_names = classes;
    p.probs = Matrix(ids.size(), 3);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      double sum = 0.0;
      auto row = p.probs.row(r);
      for (double &v : row) {
        v = rng.unit() + 0.01;
        sum += v;
      }
      for (double &v : row) v /= sum;
    }
    posts.push_back(std::move(p));
  }
  std::vector<std::string> names(systems, "s");
  for (auto _ : state) {
    auto [w, score] = grid_search_weights(posts, truth, 0.05, names);
    benchmark::DoNotOptimize(score);
  }
}
BENCHMARK(BM_GridSearchWeights)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
