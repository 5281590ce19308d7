// core/src/gmm.cpp

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

#include "paralin/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json_util.hpp"
#include "paralin/error.hpp"
#include "paralin/parallel.hpp"
#include "paralin/rng.hpp"

namespace paralin {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)
constexpr double kMinResponsibilityMass = 1e-10;
constexpr double kMinWeight = 1e-10;

// The E step accumulates per fixed-size chunk and merges the partials in
// chunk order, so the reduction tree is independent of the worker count and
// results are bit-identical for any `jobs`.
constexpr std::size_t kEmChunk = 2048;

struct EmAccumulator {
  double loglik_sum = 0.0;
  std::vector<double> resp_mass;  // K
  std::vector<double> sum_x;      // K x D
  std::vector<double> sum_xx;     // K x D

  EmAccumulator(std::size_t k, std::size_t d)
      : resp_mass(k, 0.0), sum_x(k * d, 0.0), sum_xx(k * d, 0.0) {}

  void merge(const EmAccumulator &o) {
    loglik_sum += o.loglik_sum;
    for (std::size_t i = 0; i < resp_mass.size(); ++i) resp_mass[i] += o.resp_mass[i];
    for (std::size_t i = 0; i < sum_x.size(); ++i) sum_x[i] += o.sum_x[i];
    for (std::size_t i = 0; i < sum_xx.size(); ++i) sum_xx[i] += o.sum_xx[i];
  }
};

}  // namespace

std::string DiagonalGmm::model_id() const {
  return "gmm:k=" + std::to_string(components()) + ":d=" + std::to_string(dim()) +
         ":seed=" + std::to_string(seed);
}

GmmScorer::GmmScorer(const DiagonalGmm &g) : gmm_(&g) {
  const std::size_t k_count = g.components();
  const std::size_t dim = g.dim();
  log_const_.resize(k_count);
  inv_std_.resize(k_count * dim);
  for (std::size_t k = 0; k < k_count; ++k) {
    double log_det = 0.0;
    auto stds = g.stds.row(k);
    for (std::size_t d = 0; d < dim; ++d) {
      log_det += std::log(stds[d]);
      inv_std_[k * dim + d] = 1.0 / stds[d];
    }
    log_const_[k] = std::log(g.weights[k]) - 0.5 * static_cast<double>(dim) * kLog2Pi - log_det;
  }
}

void GmmScorer::log_weighted_densities(std::span<const double> frame,
                                       std::span<double> out) const {
  const std::size_t k_count = gmm_->components();
  const std::size_t dim = gmm_->dim();
  for (std::size_t k = 0; k < k_count; ++k) {
    auto mu = gmm_->means.row(k);
    const double *inv = inv_std_.data() + k * dim;
    double quad = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double z = (frame[d] - mu[d]) * inv[d];
      quad += z * z;
    }
    out[k] = log_const_[k] - 0.5 * quad;
  }
}

double GmmScorer::responsibilities(std::span<const double> frame,
                                   std::span<double> out) const {
  log_weighted_densities(frame, out);
  double max_log = out[0];
  for (double v : out) max_log = std::max(max_log, v);
  double sum = 0.0;
  for (double &v : out) {
    v = std::exp(v - max_log);
    sum += v;
  }
  for (double &v : out) v /= sum;
  return max_log + std::log(sum);
}

double GmmScorer::frame_loglik(std::span<const double> frame) const {
  std::vector<double> tmp(gmm_->components());
  return responsibilities(frame, tmp);
}

std::vector<double> responsibilities(const DiagonalGmm &g, std::span<const double> frame) {
  if (frame.size() != g.dim()) {
    throw DataError("responsibilities: frame dimension " + std::to_string(frame.size()) +
                    " does not match model dimension " + std::to_string(g.dim()));
  }
  std::vector<double> out(g.components());
  GmmScorer(g).responsibilities(frame, out);
  return out;
}

double gmm_loglik(const DiagonalGmm &g, const Matrix &frames) {
  if (frames.cols() != g.dim()) {
    throw DataError("gmm_loglik: frame dimension " + std::to_string(frames.cols()) +
                    " does not match model dimension " + std::to_string(g.dim()));
  }
  if (frames.rows() == 0) throw ParameterError("gmm_loglik: no frames");
  GmmScorer scorer(g);
  std::vector<double> tmp(g.components());
  double sum = 0.0;
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    sum += scorer.responsibilities(frames.row(t), tmp);
  }
  return sum / static_cast<double>(frames.rows());
}

double gmm_loglik(const DiagonalGmm &g, const FrameMatrix &m) {
  return gmm_loglik(g, m.frames);
}

DiagonalGmm fit_gmm(const Matrix &frames, std::size_t k, std::uint64_t seed,
                    const GmmFitOptions &options) {
  const std::size_t t_count = frames.rows();
  const std::size_t dim = frames.cols();
  if (k < 1) throw ParameterError("fit_gmm: component count must be positive");
  if (t_count < k) {
    throw ParameterError("fit_gmm: " + std::to_string(t_count) + " frames are fewer than " +
                         std::to_string(k) + " components");
  }

  DiagonalGmm g;
  g.seed = seed;
  g.weights.assign(k, 1.0 / static_cast<double>(k));
  g.means = Matrix(k, dim);
  g.stds = Matrix(k, dim);

  // Seeded init: component means are sampled frames, stds the global std.
  Rng rng(seed);
  auto picks = rng.sample_indices(t_count, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto src = frames.row(picks[i]);
    auto dst = g.means.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  {
    std::vector<double> mean(dim, 0.0), sq(dim, 0.0);
    for (std::size_t t = 0; t < t_count; ++t) {
      auto row = frames.row(t);
      for (std::size_t d = 0; d < dim; ++d) {
        mean[d] += row[d];
        sq[d] += row[d] * row[d];
      }
    }
    for (std::size_t d = 0; d < dim; ++d) {
      mean[d] /= static_cast<double>(t_count);
      double var = sq[d] / static_cast<double>(t_count) - mean[d] * mean[d];
      double sd = var > 0.0 ? std::sqrt(var) : 0.0;
      sd = std::max(sd, kGmmStdFloor);
      for (std::size_t comp = 0; comp < k; ++comp) g.stds(comp, d) = sd;
    }
  }

  if (options.loglik_trace != nullptr) options.loglik_trace->clear();

  const std::size_t chunk_count = (t_count + kEmChunk - 1) / kEmChunk;
  double prev_loglik = -std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    GmmScorer scorer(g);
    std::vector<EmAccumulator> partials(chunk_count, EmAccumulator(k, dim));
    parallel_for(chunk_count, options.jobs, [&](std::size_t c) {
      EmAccumulator &acc = partials[c];
      std::vector<double> resp(k);
      const std::size_t begin = c * kEmChunk;
      const std::size_t end = std::min(begin + kEmChunk, t_count);
      for (std::size_t t = begin; t < end; ++t) {
        auto row = frames.row(t);
        acc.loglik_sum += scorer.responsibilities(row, resp);
        for (std::size_t comp = 0; comp < k; ++comp) {
          double r = resp[comp];
          if (r == 0.0) continue;
          acc.resp_mass[comp] += r;
          double *sx = acc.sum_x.data() + comp * dim;
          double *sxx = acc.sum_xx.data() + comp * dim;
          for (std::size_t d = 0; d < dim; ++d) {
            double v = row[d];
            sx[d] += r * v;
            sxx[d] += r * v * v;
          }
        }
      }
    });
    EmAccumulator total(k, dim);
    for (const auto &p : partials) total.merge(p);

    double loglik = total.loglik_sum / static_cast<double>(t_count);
    if (!std::isfinite(loglik)) {
      throw NumericError("fit_gmm: non-finite log-likelihood at iteration " +
                         std::to_string(iter));
    }
    if (options.loglik_trace != nullptr) options.loglik_trace->push_back(loglik);
    g.final_loglik = loglik;

    // M step.
    double weight_sum = 0.0;
    for (std::size_t comp = 0; comp < k; ++comp) {
      double mass = total.resp_mass[comp];
      if (mass > kMinResponsibilityMass) {
        g.weights[comp] = mass / static_cast<double>(t_count);
        const double *sx = total.sum_x.data() + comp * dim;
        const double *sxx = total.sum_xx.data() + comp * dim;
        auto mu = g.means.row(comp);
        auto sd = g.stds.row(comp);
        for (std::size_t d = 0; d < dim; ++d) {
          mu[d] = sx[d] / mass;
          double var = sxx[d] / mass - mu[d] * mu[d];
          sd[d] = std::max(var > 0.0 ? std::sqrt(var) : 0.0, kGmmStdFloor);
        }
      } else {
        // Starved component: keep its parameters, pin the weight low.
        g.weights[comp] = kMinWeight;
      }
      g.weights[comp] = std::max(g.weights[comp], kMinWeight);
      weight_sum += g.weights[comp];
    }
    for (double &w : g.weights) w /= weight_sum;

    if (iter > 1 && loglik - prev_loglik < options.tol) break;
    prev_loglik = loglik;
  }
  return g;
}

std::string gmm_to_json(const DiagonalGmm &g) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["seed"] = g.seed;
  j["weights"] = g.weights;
  j["means"] = detail::matrix_to_json(g.means);
  j["stds"] = detail::matrix_to_json(g.stds);
  j["final_loglik"] = g.final_loglik;
  return j.dump(2) + "\n";
}

DiagonalGmm gmm_from_json(const std::string &text) {
  auto j = detail::parse_json(text, "gmm");
  detail::check_version(j, "gmm");
  DiagonalGmm g;
  g.seed = j.at("seed").get<std::uint64_t>();
  g.weights = j.at("weights").get<std::vector<double>>();
  g.means = detail::matrix_from_json(j.at("means"), "gmm means");
  g.stds = detail::matrix_from_json(j.at("stds"), "gmm stds");
  g.final_loglik = j.at("final_loglik").get<double>();

  if (g.weights.empty() || g.means.rows() != g.weights.size() ||
      g.stds.rows() != g.weights.size() || g.means.cols() != g.stds.cols()) {
    throw FormatError("gmm: inconsistent shapes");
  }
  double sum = 0.0;
  for (double w : g.weights) {
    if (w <= 0.0) throw FormatError("gmm: non-positive weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw FormatError("gmm: weights do not sum to 1");
  for (double s : g.stds.data()) {
    if (!(s >= kGmmStdFloor)) throw FormatError("gmm: std below floor");
  }
  return g;
}

void save_gmm(const DiagonalGmm &g, const std::string &path) {
  detail::write_file(path, gmm_to_json(g));
}

DiagonalGmm load_gmm(const std::string &path) {
  return gmm_from_json(detail::read_file(path));
}

}  // namespace paralin
