// tests/test_classify.cpp

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

#include <cmath>
#include <map>
#include <set>

#include "paralin/ensemble.hpp"
#include "paralin/error.hpp"
#include "paralin/evaluation.hpp"
#include "paralin/rng.hpp"
#include "paralin/svm.hpp"

using namespace paralin;

namespace {

FeatureTable table_1d(std::initializer_list<double> xs) {
  FeatureTable t;
  int i = 0;
  for (double x : xs) {
    t.utterance_ids.push_back("u" + std::to_string(i++));
    t.vectors.append_row(std::vector<double>{x});
  }
  return t;
}

// Two Gaussian blobs `separation` standard deviations apart.
void two_blobs(Rng &rng, std::size_t per_class, double separation, FeatureTable *t,
               std::vector<std::string> *y) {
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    bool second = i >= per_class;
    double cx = second ? separation : 0.0;
    t->utterance_ids.push_back("u" + std::to_string(i));
    t->vectors.append_row(std::vector<double>{cx + rng.normal(), rng.normal()});
    y->push_back(second ? "b" : "a");
  }
}

}  // namespace

TEST_CASE("separable 1-D training reaches accuracy 1 and calibrated posteriors") {
  FeatureTable t = table_1d({-3.0, -2.0, 2.0, 3.0});
  std::vector<std::string> y{"a", "a", "b", "b"};
  LinearModel model = train_linear_svm(t, y, 1.0, 42);
  CHECK(model.class_names == std::vector<std::string>{"a", "b"});

  PosteriorMatrix p = predict_posteriors(model, t);
  auto labels = argmax_labels(p);
  CHECK(labels == y);

  FeatureTable probe = table_1d({2.5});
  PosteriorMatrix pp = predict_posteriors(model, probe);
  CHECK(pp.probs(0, 1) > 0.5);
}

TEST_CASE("duplicated dataset predicts the same labels") {
  FeatureTable t = table_1d({-3.0, -2.0, 2.0, 3.0});
  std::vector<std::string> y{"a", "a", "b", "b"};

  FeatureTable doubled = t;
  std::vector<std::string> y2 = y;
  for (std::size_t i = 0; i < t.vectors.rows(); ++i) {
    doubled.utterance_ids.push_back("d" + std::to_string(i));
    doubled.vectors.append_row(t.vectors.row(i));
    y2.push_back(y[i]);
  }

  LinearModel m1 = train_linear_svm(t, y, 1.0, 7);
  LinearModel m2 = train_linear_svm(doubled, y2, 1.0, 7);
  CHECK(argmax_labels(predict_posteriors(m1, t)) == argmax_labels(predict_posteriors(m2, t)));
}

TEST_CASE("single-class input is a parameter error") {
  FeatureTable t = table_1d({1.0, 2.0});
  std::vector<std::string> y{"a", "a"};
  CHECK_THROWS_AS(train_linear_svm(t, y, 1.0, 0), ParameterError);
}

TEST_CASE("non-finite features are a data error") {
  FeatureTable t = table_1d({1.0, 2.0});
  t.vectors(0, 0) = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> y{"a", "b"};
  CHECK_THROWS_AS(train_linear_svm(t, y, 1.0, 0), DataError);
}

TEST_CASE("posterior rows sum to one") {
  Rng rng(13);
  FeatureTable t;
  std::vector<std::string> y;
  for (int i = 0; i < 60; ++i) {
    t.utterance_ids.push_back("u" + std::to_string(i));
    t.vectors.append_row(std::vector<double>{rng.normal(), rng.normal(), rng.normal()});
    y.push_back(i % 3 == 0 ? "x" : i % 3 == 1 ? "y" : "z");
  }
  LinearModel model = train_linear_svm(t, y, 0.1, 3);
  PosteriorMatrix p = predict_posteriors(model, t);
  validate_posteriors(p);
  CHECK(p.class_names == std::vector<std::string>{"x", "y", "z"});
  for (std::size_t r = 0; r < p.probs.rows(); ++r) {
    double sum = 0.0;
    for (double v : p.probs.row(r)) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("empty feature table predicts an empty posterior matrix") {
  FeatureTable t = table_1d({-1.0, 1.0});
  LinearModel model = train_linear_svm(t, {"a", "b"}, 1.0, 0);
  FeatureTable empty;
  empty.vectors = Matrix(0, 0);
  PosteriorMatrix p = predict_posteriors(model, empty);
  CHECK(p.utterance_ids.empty());
  CHECK(p.probs.rows() == 0);
  CHECK(p.class_names == model.class_names);
}

TEST_CASE("training UAR is 1 on well-separated blobs for C >= 1") {
  for (double c : {1.0, 10.0}) {
    Rng rng(19);
    FeatureTable t;
    std::vector<std::string> y;
    two_blobs(rng, 50, 10.0, &t, &y);
    LinearModel model = train_linear_svm(t, y, c, 5);
    auto labels = argmax_labels(predict_posteriors(model, t));
    CHECK(uar(y, labels) == 1.0);
  }
}

TEST_CASE("prediction labels are invariant to consistent standardization") {
  Rng rng(29);
  FeatureTable t;
  std::vector<std::string> y;
  two_blobs(rng, 30, 8.0, &t, &y);

  FeatureTable scaled = t;
  for (std::size_t r = 0; r < scaled.vectors.rows(); ++r) {
    auto row = scaled.vectors.row(r);
    row[0] = (row[0] - 4.0) / 2.0;
    row[1] = row[1] / 0.5;
  }

  LinearModel m1 = train_linear_svm(t, y, 1.0, 11);
  LinearModel m2 = train_linear_svm(scaled, y, 1.0, 11);
  CHECK(argmax_labels(predict_posteriors(m1, t)) ==
        argmax_labels(predict_posteriors(m2, scaled)));
}

TEST_CASE("downsample_indices balances classes without replacement") {
  std::vector<std::string> y;
  for (int i = 0; i < 10; ++i) y.push_back("a");
  for (int i = 0; i < 4; ++i) y.push_back("b");
  for (int i = 0; i < 7; ++i) y.push_back("c");

  auto rows = downsample_indices(y, 42, 0);
  CHECK(rows.size() == 12);
  std::map<std::string, int> counts;
  std::set<std::size_t> unique(rows.begin(), rows.end());
  CHECK(unique.size() == rows.size());
  for (std::size_t i : rows) counts[y[i]] += 1;
  CHECK(counts["a"] == 4);
  CHECK(counts["b"] == 4);
  CHECK(counts["c"] == 4);

  CHECK(downsample_indices(y, 42, 0) == rows);
  CHECK(downsample_indices(y, 42, 1) != rows);
}

TEST_CASE("balanced data keeps every example in each member") {
  FeatureTable t = table_1d({-3.0, -2.0, 2.0, 3.0});
  std::vector<std::string> y{"a", "a", "b", "b"};
  EnsembleModel e = train_downsampled_ensemble(t, y, 1.0, 3, 9);
  CHECK(e.members.size() == 3);
  for (int r = 0; r < 3; ++r) {
    CHECK(downsample_indices(y, 9, r) == std::vector<std::size_t>{0, 1, 2, 3});
  }
  auto ens_labels = argmax_labels(predict_ensemble(e, t));
  LinearModel single = train_linear_svm(t, y, 1.0, 9);
  CHECK(ens_labels == argmax_labels(predict_posteriors(single, t)));
}

TEST_CASE("class counts 10/4/7 train members on 12 examples") {
  Rng rng(31);
  FeatureTable t;
  std::vector<std::string> y;
  for (int i = 0; i < 21; ++i) {
    t.utterance_ids.push_back("u" + std::to_string(i));
    double shift = i < 10 ? 0.0 : i < 14 ? 10.0 : 20.0;
    t.vectors.append_row(std::vector<double>{shift + rng.normal()});
    y.push_back(i < 10 ? "a" : i < 14 ? "b" : "c");
  }
  EnsembleModel e = train_downsampled_ensemble(t, y, 1.0, 1, 4);
  CHECK(downsample_indices(y, 4, 0).size() == 12);
  CHECK(e.members.size() == 1);
}

TEST_CASE("ensembles are deterministic and jobs-independent") {
  Rng rng(37);
  FeatureTable t;
  std::vector<std::string> y;
  two_blobs(rng, 20, 6.0, &t, &y);
  // Imbalance so downsampling has something to do.
  t.utterance_ids.push_back("extra");
  t.vectors.append_row(std::vector<double>{0.1, 0.2});
  y.push_back("a");

  EnsembleModel e1 = train_downsampled_ensemble(t, y, 1.0, 8, 42, 1);
  EnsembleModel e2 = train_downsampled_ensemble(t, y, 1.0, 8, 42, 4);
  CHECK(ensemble_to_json(e1) == ensemble_to_json(e2));

  PosteriorMatrix p1 = predict_ensemble(e1, t, 1);
  PosteriorMatrix p2 = predict_ensemble(e2, t, 4);
  CHECK(p1.probs == p2.probs);
}

TEST_CASE("predict_ensemble averages member posteriors") {
  FeatureTable t = table_1d({-3.0, -2.0, 2.0, 3.0});
  std::vector<std::string> y{"a", "a", "b", "b"};

  EnsembleModel one = train_downsampled_ensemble(t, y, 1.0, 1, 5);
  PosteriorMatrix pe = predict_ensemble(one, t);
  PosteriorMatrix pm = predict_posteriors(one.members[0], t);
  CHECK(pe.probs == pm.probs);

  // Hand mean of two fixed rows.
  Matrix a = Matrix::from_rows({{0.8, 0.2}});
  Matrix b = Matrix::from_rows({{0.4, 0.6}});
  Matrix mean(1, 2);
  for (std::size_t c = 0; c < 2; ++c) mean(0, c) = (a(0, c) + b(0, c)) / 2.0;
  CHECK(mean(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(mean(0, 1) == doctest::Approx(0.4).epsilon(1e-15));

  EnsembleModel same;
  same.repeats = 3;
  same.members = {one.members[0], one.members[0], one.members[0]};
  PosteriorMatrix ps = predict_ensemble(same, t);
  for (std::size_t i = 0; i < ps.probs.data().size(); ++i) {
    CHECK(ps.probs.data()[i] == doctest::Approx(pm.probs.data()[i]).epsilon(1e-15));
  }
}

TEST_CASE("linear model and ensemble serialization round-trip") {
  FeatureTable t = table_1d({-3.0, -2.0, 2.0, 3.0});
  std::vector<std::string> y{"a", "a", "b", "b"};
  LinearModel model = train_linear_svm(t, y, 0.5, 2);

  LinearModel loaded = linear_model_from_json(linear_model_to_json(model));
  CHECK(loaded.class_names == model.class_names);
  CHECK(loaded.weights == model.weights);
  CHECK(loaded.biases == model.biases);
  CHECK(loaded.c_value == 0.5);
  CHECK(linear_model_to_json(loaded) == linear_model_to_json(model));

  EnsembleModel e = train_downsampled_ensemble(t, y, 0.5, 2, 3);
  EnsembleModel le = ensemble_from_json(ensemble_to_json(e));
  CHECK(le.repeats == 2);
  CHECK(le.seed == 3);
  CHECK(ensemble_to_json(le) == ensemble_to_json(e));

  // Round-tripped models predict identically.
  CHECK(predict_ensemble(le, t).probs == predict_ensemble(e, t).probs);
}
