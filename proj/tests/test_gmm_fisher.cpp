// tests/test_gmm_fisher.cpp

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paralin/error.hpp"
#include "paralin/fisher.hpp"
#include "paralin/gmm.hpp"
#include "paralin/rng.hpp"

using namespace paralin;

namespace {

DiagonalGmm random_model(Rng &rng, std::size_t k, std::size_t dim) {
  DiagonalGmm g;
  g.weights.resize(k);
  double sum = 0.0;
  for (double &w : g.weights) {
    w = 0.2 + rng.unit();
    sum += w;
  }
  for (double &w : g.weights) w /= sum;
  g.means = Matrix(k, dim);
  g.stds = Matrix(k, dim);
  for (double &v : g.means.data()) v = 2.0 * rng.normal();
  for (double &v : g.stds.data()) v = 0.5 + rng.unit();
  return g;
}

FrameMatrix random_frames(Rng &rng, std::size_t t_count, std::size_t dim) {
  FrameMatrix m;
  m.frames = Matrix(t_count, dim);
  for (double &v : m.frames.data()) v = 2.0 * rng.normal();
  return m;
}

// Central finite difference of gmm_loglik with respect to one mean or std
// entry; the independent reference for the Fisher score.
double fd_gradient(const DiagonalGmm &g, const FrameMatrix &m, bool wrt_std, std::size_t k,
                   std::size_t d, double step) {
  DiagonalGmm hi = g, lo = g;
  if (wrt_std) {
    hi.stds(k, d) += step;
    lo.stds(k, d) -= step;
  } else {
    hi.means(k, d) += step;
    lo.means(k, d) -= step;
  }
  return (gmm_loglik(hi, m) - gmm_loglik(lo, m)) / (2.0 * step);
}

}  // namespace

TEST_CASE("gmm_loglik analytic single-Gaussian value") {
  DiagonalGmm g;
  g.weights = {1.0};
  g.means = Matrix::from_rows({{0.0}});
  g.stds = Matrix::from_rows({{1.0}});
  FrameMatrix m;
  m.frames = Matrix::from_rows({{0.0}});
  // -0.5 * log(2*pi)
  CHECK(gmm_loglik(g, m) == doctest::Approx(-0.9189385332046727).epsilon(1e-12));
}

TEST_CASE("gmm_loglik mixture degeneracy and frame duplication") {
  Rng rng(5);
  DiagonalGmm one;
  one.weights = {1.0};
  one.means = Matrix::from_rows({{0.3, -0.7}});
  one.stds = Matrix::from_rows({{1.2, 0.8}});

  DiagonalGmm two;
  two.weights = {0.3, 0.7};
  two.means = Matrix::from_rows({{0.3, -0.7}, {0.3, -0.7}});
  two.stds = Matrix::from_rows({{1.2, 0.8}, {1.2, 0.8}});

  FrameMatrix m = random_frames(rng, 25, 2);
  CHECK(gmm_loglik(two, m) == doctest::Approx(gmm_loglik(one, m)).epsilon(1e-12));

  FrameMatrix doubled;
  doubled.frames = m.frames;
  doubled.frames.append_rows(m.frames);
  CHECK(gmm_loglik(one, doubled) == doctest::Approx(gmm_loglik(one, m)).epsilon(1e-12));
}

TEST_CASE("gmm_loglik dimension mismatch") {
  DiagonalGmm g;
  g.weights = {1.0};
  g.means = Matrix::from_rows({{0.0}});
  g.stds = Matrix::from_rows({{1.0}});
  FrameMatrix m;
  m.frames = Matrix::from_rows({{0.0, 1.0}});
  CHECK_THROWS_AS(gmm_loglik(g, m), DataError);
}

TEST_CASE("responsibilities basics") {
  DiagonalGmm g;
  g.weights = {1.0};
  g.means = Matrix::from_rows({{2.0}});
  g.stds = Matrix::from_rows({{1.0}});
  CHECK(responsibilities(g, std::vector<double>{5.0}) == std::vector<double>{1.0});

  DiagonalGmm sym;
  sym.weights = {0.5, 0.5};
  sym.means = Matrix::from_rows({{-1.0}, {1.0}});
  sym.stds = Matrix::from_rows({{1.0}, {1.0}});
  auto r = responsibilities(sym, std::vector<double>{0.0});
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("responsibilities stay normalized far in the tails") {
  DiagonalGmm g;
  g.weights = {0.5, 0.5};
  g.means = Matrix::from_rows({{0.0}, {20.0}});
  g.stds = Matrix::from_rows({{1.0}, {1.0}});
  auto r = responsibilities(g, std::vector<double>{0.0});
  CHECK(r[0] > 1.0 - 1e-12);
  CHECK(r[0] + r[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Way outside both components: log densities underflow exp() but the
  // log-space path still normalizes.
  auto far = responsibilities(g, std::vector<double>{-2000.0});
  CHECK(std::isfinite(far[0]));
  CHECK(far[0] + far[1] == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(8);
  DiagonalGmm model = random_model(rng, 4, 3);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x{3.0 * rng.normal(), 3.0 * rng.normal(), 3.0 * rng.normal()};
    auto resp = responsibilities(model, x);
    double sum = 0.0;
    for (double v : resp) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("fit_gmm recovers two well-separated clusters") {
  Matrix frames = Matrix::from_rows({{-0.1}, {0.0}, {0.1}, {9.9}, {10.0}, {10.1}});
  GmmFitOptions opts;
  DiagonalGmm g = fit_gmm(frames, 2, 42, opts);

  std::size_t low = g.means(0, 0) < g.means(1, 0) ? 0 : 1;
  CHECK(std::abs(g.means(low, 0) - 0.0) < 0.2);
  CHECK(std::abs(g.means(1 - low, 0) - 10.0) < 0.2);
  CHECK(std::abs(g.weights[0] - 0.5) < 0.05);
  CHECK(std::abs(g.weights[1] - 0.5) < 0.05);
}

TEST_CASE("fit_gmm with one component is the closed form") {
  Rng rng(9);
  Matrix frames(40, 2);
  for (double &v : frames.data()) v = rng.normal() + 3.0;
  DiagonalGmm g = fit_gmm(frames, 1, 0);

  double mean0 = 0.0, mean1 = 0.0;
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    mean0 += frames(t, 0);
    mean1 += frames(t, 1);
  }
  mean0 /= 40.0;
  mean1 /= 40.0;
  double var0 = 0.0;
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    var0 += (frames(t, 0) - mean0) * (frames(t, 0) - mean0);
  }
  var0 /= 40.0;

  CHECK(g.weights == std::vector<double>{1.0});
  CHECK(g.means(0, 0) == doctest::Approx(mean0).epsilon(1e-12));
  CHECK(g.means(0, 1) == doctest::Approx(mean1).epsilon(1e-12));
  CHECK(g.stds(0, 0) == doctest::Approx(std::sqrt(var0)).epsilon(1e-9));
}

TEST_CASE("fit_gmm is bit-deterministic and jobs-independent") {
  Rng rng(10);
  Matrix frames(3000, 3);
  for (double &v : frames.data()) v = rng.normal();

  GmmFitOptions opts;
  DiagonalGmm a = fit_gmm(frames, 4, 7, opts);
  DiagonalGmm b = fit_gmm(frames, 4, 7, opts);
  CHECK(a.means == b.means);
  CHECK(a.stds == b.stds);
  CHECK(a.weights == b.weights);
  CHECK(a.final_loglik == b.final_loglik);

  opts.jobs = 4;
  DiagonalGmm c = fit_gmm(frames, 4, 7, opts);
  CHECK(c.means == a.means);
  CHECK(c.stds == a.stds);
  CHECK(c.weights == a.weights);
  CHECK(c.final_loglik == a.final_loglik);
}

TEST_CASE("fit_gmm parameter errors") {
  Matrix frames = Matrix::from_rows({{0.0}, {1.0}});
  CHECK_THROWS_AS(fit_gmm(frames, 3, 0), ParameterError);
  CHECK_THROWS_AS(fit_gmm(frames, 0, 0), ParameterError);
}

TEST_CASE("EM log-likelihood is non-decreasing") {
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t dim = 1 + rng.below(3);
    Matrix frames(80 + rng.below(120), dim);
    for (double &v : frames.data()) v = rng.normal() + (rng.unit() < 0.5 ? -2.0 : 2.0);
    for (std::size_t k : {1u, 2u, 4u, 8u}) {
      std::vector<double> trace;
      GmmFitOptions opts;
      opts.loglik_trace = &trace;
      fit_gmm(frames, k, 1000 + static_cast<std::uint64_t>(trial), opts);
      REQUIRE(trace.size() >= 1);
      for (std::size_t i = 1; i < trace.size(); ++i) {
        CHECK(trace[i] >= trace[i - 1] - 1e-9);
      }
    }
  }
}

TEST_CASE("encode_fisher closed-form hand example") {
  DiagonalGmm g;
  g.weights = {1.0};
  g.means = Matrix::from_rows({{0.0}});
  g.stds = Matrix::from_rows({{1.0}});

  FrameMatrix m;
  m.frames = Matrix::from_rows({{0.0}});
  auto fv = encode_fisher(g, m);
  REQUIRE(fv.values.size() == 2);
  CHECK(fv.values[0] == 0.0);
  CHECK(fv.values[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));

  // Sample moments matching the model zero the score.
  FrameMatrix matched;
  matched.frames = Matrix::from_rows({{-1.0}, {1.0}});
  auto fv2 = encode_fisher(g, matched);
  CHECK(fv2.values[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fv2.values[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("encode_fisher layout, length and invariances") {
  Rng rng(31);
  DiagonalGmm g = random_model(rng, 3, 2);
  FrameMatrix m = random_frames(rng, 40, 2);

  auto fv = encode_fisher(g, m);
  CHECK(fv.values.size() == 2 * 3 * 2);
  CHECK(fv.gmm_ref == g.model_id());

  std::vector<std::size_t> perm(m.frames.rows());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);
  FrameMatrix shuffled;
  for (std::size_t i : perm) shuffled.frames.append_row(m.frames.row(i));
  auto fv_perm = encode_fisher(g, shuffled);
  for (std::size_t i = 0; i < fv.values.size(); ++i) {
    CHECK(fv.values[i] == doctest::Approx(fv_perm.values[i]).epsilon(1e-12));
  }

  FrameMatrix doubled;
  doubled.frames = m.frames;
  doubled.frames.append_rows(m.frames);
  auto fv_dup = encode_fisher(g, doubled);
  for (std::size_t i = 0; i < fv.values.size(); ++i) {
    CHECK(fv.values[i] == doctest::Approx(fv_dup.values[i]).epsilon(1e-12));
  }

  FrameMatrix wrong = random_frames(rng, 4, 3);
  CHECK_THROWS_AS(encode_fisher(g, wrong), DataError);
}

TEST_CASE("unnormalized Fisher score matches finite differences of the log-likelihood") {
  // The score in sigma units: entry * sqrt(w_k) (mean) or sqrt(2 w_k) (std)
  // equals sigma_kd times d loglik / d theta_kd.
  Rng rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t k_count = 1 + rng.below(4);
    std::size_t dim = 1 + rng.below(3);
    std::size_t t_count = 5 + rng.below(46);
    DiagonalGmm g = random_model(rng, k_count, dim);
    FrameMatrix m = random_frames(rng, t_count, dim);

    auto fv = encode_fisher(g, m);
    const double step = 1e-5;
    for (std::size_t k = 0; k < k_count; ++k) {
      for (std::size_t d = 0; d < dim; ++d) {
        double unnorm_mean = fv.values[k * dim + d] * std::sqrt(g.weights[k]);
        double grad_mean = g.stds(k, d) * fd_gradient(g, m, false, k, d, step);
        CHECK(unnorm_mean ==
              doctest::Approx(grad_mean).epsilon(1e-4).scale(std::max(1e-2, std::abs(grad_mean))));

        double unnorm_std =
            fv.values[k_count * dim + k * dim + d] * std::sqrt(2.0 * g.weights[k]);
        double grad_std = g.stds(k, d) * fd_gradient(g, m, true, k, d, step);
        CHECK(unnorm_std ==
              doctest::Approx(grad_std).epsilon(1e-4).scale(std::max(1e-2, std::abs(grad_std))));
      }
    }
  }
}

TEST_CASE("Fisher vector of the training pool is near zero at the EM optimum") {
  Rng rng(222);
  std::vector<FrameMatrix> utts;
  Matrix pooled;
  for (int u = 0; u < 24; ++u) {
    FrameMatrix m = random_frames(rng, 30 + rng.below(40), 2);
    pooled.append_rows(m.frames);
    utts.push_back(std::move(m));
  }
  GmmFitOptions opts;
  opts.max_iter = 500;
  opts.tol = 1e-12;
  DiagonalGmm g = fit_gmm(pooled, 2, 5, opts);

  auto norm = [](const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };

  FrameMatrix pool_utt;
  pool_utt.frames = pooled;
  double pool_norm = norm(encode_fisher(g, pool_utt).values);

  std::vector<double> norms;
  for (const auto &u : utts) norms.push_back(norm(encode_fisher(g, u).values));
  std::sort(norms.begin(), norms.end());
  double median = norms[norms.size() / 2];

  CHECK(pool_norm < 0.05 * median);
}

TEST_CASE("gmm serialization round-trips and validates") {
  Rng rng(4);
  DiagonalGmm g = random_model(rng, 3, 2);
  g.seed = 77;
  g.final_loglik = -3.25;

  DiagonalGmm loaded = gmm_from_json(gmm_to_json(g));
  CHECK(loaded.weights == g.weights);
  CHECK(loaded.means == g.means);
  CHECK(loaded.stds == g.stds);
  CHECK(loaded.seed == 77);
  CHECK(loaded.final_loglik == -3.25);
  CHECK(gmm_to_json(loaded) == gmm_to_json(g));

  DiagonalGmm bad = g;
  bad.weights[0] += 0.5;
  CHECK_THROWS_AS(gmm_from_json(gmm_to_json(bad)), FormatError);
}
