// core/src/svm.cpp

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

#include "paralin/svm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json_util.hpp"
#include "paralin/error.hpp"
#include "paralin/rng.hpp"

namespace paralin {

namespace {

constexpr double kDualTolerance = 1e-4;
constexpr int kMaxEpochs = 1000;

// Dual coordinate descent for min_w 1/2 |w|^2 + C sum max(0, 1 - y w.x),
// the LIBLINEAR L2R_L1LOSS schedule without shrinking. x carries the
// augmented constant-1 column; y entries are +1/-1.
std::vector<double> solve_binary_hinge(const Matrix &x, const std::vector<double> &y,
                                       double c, Rng &rng) {
  const std::size_t n = x.rows();
  const std::size_t dim = x.cols();
  std::vector<double> w(dim, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> q_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    double q = 0.0;
    for (double v : xi) q += v * v;
    q_diag[i] = q;  // > 0, the augmented column contributes 1
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < kMaxEpochs; ++epoch) {
    rng.shuffle(order);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t i : order) {
      auto xi = x.row(i);
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += w[d] * xi[d];
      double g = y[i] * dot - 1.0;

      double pg;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= c) {
        pg = std::max(g, 0.0);
      } else {
        pg = g;
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);

      if (std::abs(pg) > 1e-12) {
        double old = alpha[i];
        alpha[i] = std::clamp(old - g / q_diag[i], 0.0, c);
        double delta = (alpha[i] - old) * y[i];
        if (delta != 0.0) {
          for (std::size_t d = 0; d < dim; ++d) w[d] += delta * xi[d];
        }
      }
    }
    if (pg_max - pg_min < kDualTolerance) break;
  }
  return w;
}

// Platt's sigmoid fit with the Lin-Weng numerically stable Newton schedule.
PlattScaling fit_platt(const std::vector<double> &decisions,
                       const std::vector<bool> &positive) {
  const std::size_t n = decisions.size();
  double prior1 = 0.0, prior0 = 0.0;
  for (bool p : positive) (p ? prior1 : prior0) += 1.0;

  const int max_iter = 100;
  const double min_step = 1e-10;
  const double sigma = 1e-12;
  const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo_target = 1.0 / (prior0 + 2.0);

  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = positive[i] ? hi_target : lo_target;

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));

  auto objective = [&](double pa, double pb) {
    double fval = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double f_ab = decisions[i] * pa + pb;
      if (f_ab >= 0.0) {
        fval += t[i] * f_ab + std::log1p(std::exp(-f_ab));
      } else {
        fval += (t[i] - 1.0) * f_ab + std::log1p(std::exp(f_ab));
      }
    }
    return fval;
  };

  double fval = objective(a, b);
  for (int iter = 0; iter < max_iter; ++iter) {
    double h11 = sigma, h22 = sigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double f_ab = decisions[i] * a + b;
      double p, q;
      if (f_ab >= 0.0) {
        double e = std::exp(-f_ab);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        double e = std::exp(f_ab);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      double d1 = t[i] - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

    double det = h11 * h22 - h21 * h21;
    double da = -(h22 * g1 - h21 * g2) / det;
    double db = -(-h21 * g1 + h11 * g2) / det;
    double gd = g1 * da + g2 * db;

    double step = 1.0;
    while (step >= min_step) {
      double new_a = a + step * da;
      double new_b = b + step * db;
      double new_f = objective(new_a, new_b);
      if (new_f < fval + 1e-4 * step * gd) {
        a = new_a;
        b = new_b;
        fval = new_f;
        break;
      }
      step /= 2.0;
    }
    if (step < min_step) break;  // line search failed
  }
  return {a, b};
}

double platt_probability(const PlattScaling &p, double decision) {
  double f_ab = decision * p.a + p.b;
  if (f_ab >= 0.0) {
    double e = std::exp(-f_ab);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(f_ab));
}

}  // namespace

LinearModel train_linear_svm(const FeatureTable &x, const std::vector<std::string> &y,
                             double c, std::uint64_t seed) {
  const std::size_t n = x.vectors.rows();
  if (y.size() != n) throw DataError("train_linear_svm: label count does not match rows");
  if (!(c > 0.0)) throw ParameterError("train_linear_svm: C must be positive");
  if (!all_finite(x.vectors)) throw DataError("train_linear_svm: non-finite feature value");

  std::set<std::string> distinct(y.begin(), y.end());
  if (distinct.size() < 2) {
    throw ParameterError("train_linear_svm: need at least 2 classes, got " +
                         std::to_string(distinct.size()));
  }

  LinearModel model;
  model.c_value = c;
  model.class_names.assign(distinct.begin(), distinct.end());

  const std::size_t dim = x.vectors.cols();
  Matrix augmented(n, dim + 1);
  for (std::size_t r = 0; r < n; ++r) {
    auto src = x.vectors.row(r);
    auto dst = augmented.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
    dst[dim] = 1.0;
  }

  model.weights = Matrix(model.class_names.size(), dim);
  model.biases.resize(model.class_names.size());
  model.platt.resize(model.class_names.size());

  std::vector<double> targets(n);
  std::vector<double> decisions(n);
  std::vector<bool> positive(n);
  for (std::size_t k = 0; k < model.class_names.size(); ++k) {
    const std::string &cls = model.class_names[k];
    for (std::size_t i = 0; i < n; ++i) {
      positive[i] = y[i] == cls;
      targets[i] = positive[i] ? 1.0 : -1.0;
    }
    Rng rng(seed, {k});
    std::vector<double> w = solve_binary_hinge(augmented, targets, c, rng);
    auto row = model.weights.row(k);
    std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(dim), row.begin());
    model.biases[k] = w[dim];

    for (std::size_t i = 0; i < n; ++i) {
      auto xi = x.vectors.row(i);
      double dot = model.biases[k];
      for (std::size_t d = 0; d < dim; ++d) dot += row[d] * xi[d];
      decisions[i] = dot;
    }
    model.platt[k] = fit_platt(decisions, positive);
  }
  return model;
}

std::vector<double> decision_values(const LinearModel &model, std::span<const double> x) {
  if (x.size() != model.feature_dim()) {
    throw DataError("decision_values: feature dimension " + std::to_string(x.size()) +
                    " does not match model dimension " +
                    std::to_string(model.feature_dim()));
  }
  std::vector<double> out(model.class_names.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto w = model.weights.row(k);
    double dot = model.biases[k];
    for (std::size_t d = 0; d < w.size(); ++d) dot += w[d] * x[d];
    out[k] = dot;
  }
  return out;
}

PosteriorMatrix predict_posteriors(const LinearModel &model, const FeatureTable &x) {
  if (x.vectors.rows() > 0 && x.vectors.cols() != model.feature_dim()) {
    throw DataError("predict_posteriors: feature dimension " +
                    std::to_string(x.vectors.cols()) + " does not match model dimension " +
                    std::to_string(model.feature_dim()));
  }
  PosteriorMatrix p;
  p.utterance_ids = x.utterance_ids;
  p.class_names = model.class_names;
  p.probs = Matrix(x.vectors.rows(), model.class_names.size());

  std::vector<double> probs(model.class_names.size());
  for (std::size_t r = 0; r < x.vectors.rows(); ++r) {
    auto decisions = decision_values(model, x.vectors.row(r));
    double sum = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      probs[k] = platt_probability(model.platt[k], decisions[k]);
      sum += probs[k];
    }
    auto row = p.probs.row(r);
    if (sum <= 0.0) {
      // Every sigmoid underflowed; fall back to the uniform posterior.
      double uniform = 1.0 / static_cast<double>(probs.size());
      for (std::size_t k = 0; k < probs.size(); ++k) row[k] = uniform;
    } else {
      for (std::size_t k = 0; k < probs.size(); ++k) row[k] = probs[k] / sum;
    }
  }
  return p;
}

std::string linear_model_to_json(const LinearModel &m) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["class_names"] = m.class_names;
  j["c_value"] = m.c_value;
  j["weights"] = detail::matrix_to_json(m.weights);
  j["biases"] = m.biases;
  nlohmann::json platt = nlohmann::json::array();
  for (const auto &p : m.platt) platt.push_back({{"A", p.a}, {"B", p.b}});
  j["platt"] = std::move(platt);
  return j.dump(2) + "\n";
}

LinearModel linear_model_from_json(const std::string &text) {
  auto j = detail::parse_json(text, "linear model");
  detail::check_version(j, "linear model");
  LinearModel m;
  m.class_names = j.at("class_names").get<std::vector<std::string>>();
  m.c_value = j.at("c_value").get<double>();
  m.weights = detail::matrix_from_json(j.at("weights"), "linear model weights");
  m.biases = j.at("biases").get<std::vector<double>>();
  for (const auto &p : j.at("platt")) {
    m.platt.push_back({p.at("A").get<double>(), p.at("B").get<double>()});
  }
  if (m.class_names.size() < 2 || m.weights.rows() != m.class_names.size() ||
      m.biases.size() != m.class_names.size() || m.platt.size() != m.class_names.size()) {
    throw FormatError("linear model: inconsistent shapes");
  }
  return m;
}

}  // namespace paralin
