// core/src/cross_validation.cpp

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

#include "paralin/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "json_util.hpp"
#include "paralin/ensemble.hpp"
#include "paralin/error.hpp"
#include "paralin/rng.hpp"

namespace paralin {

FoldPlan make_speaker_folds(const Manifest &m, int k, std::uint64_t seed) {
  if (k < 1) throw ParameterError("make_speaker_folds: fold count must be positive");
  std::set<std::string> distinct;
  for (const auto &rec : m.records) distinct.insert(rec.speaker_id);
  if (distinct.size() < static_cast<std::size_t>(k)) {
    throw ParameterError("make_speaker_folds: " + std::to_string(distinct.size()) +
                         " speakers are fewer than " + std::to_string(k) + " folds");
  }

  std::vector<std::string> speakers(distinct.begin(), distinct.end());
  Rng rng(seed);
  rng.shuffle(speakers);

  FoldPlan plan;
  plan.k = k;
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    plan.assignment[speakers[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
  }
  return plan;
}

namespace {

// Labeled slice of the manifest for one task, in manifest order.
struct TaskData {
  std::vector<std::string> ids;
  std::vector<std::string> speakers;
  std::vector<std::string> truth;
  std::vector<std::string> classes;  // sorted distinct truth labels
};

TaskData collect_task_data(const Manifest &m, const std::string &task) {
  TaskData d;
  for (const auto &rec : m.records) {
    auto it = rec.labels.find(task);
    if (it == rec.labels.end()) continue;
    d.ids.push_back(rec.utterance_id);
    d.speakers.push_back(rec.speaker_id);
    d.truth.push_back(it->second);
  }
  if (d.ids.empty()) {
    throw ParameterError("no labeled utterances for task '" + task + "'");
  }
  std::set<std::string> classes(d.truth.begin(), d.truth.end());
  d.classes.assign(classes.begin(), classes.end());
  return d;
}

FeatureTable subset_table(const std::string &name, const Matrix &rows,
                          const std::vector<std::string> &ids,
                          const std::vector<std::size_t> &picks) {
  FeatureTable t;
  t.feature_set_name = name;
  for (std::size_t i : picks) {
    t.utterance_ids.push_back(ids[i]);
    t.vectors.append_row(rows.row(i));
  }
  return t;
}

// Writes `post` rows into the pooled matrix at the given row positions,
// mapping the member class set into the global one.
void scatter_posteriors(const PosteriorMatrix &post, const std::vector<std::size_t> &positions,
                        const std::vector<std::string> &global_classes, Matrix &pooled) {
  std::vector<std::size_t> column(post.class_names.size());
  for (std::size_t c = 0; c < post.class_names.size(); ++c) {
    auto it = std::find(global_classes.begin(), global_classes.end(), post.class_names[c]);
    if (it == global_classes.end()) {
      throw DataError("fold model produced class '" + post.class_names[c] +
                      "' outside the task classes");
    }
    column[c] = static_cast<std::size_t>(it - global_classes.begin());
  }
  for (std::size_t r = 0; r < post.probs.rows(); ++r) {
    auto src = post.probs.row(r);
    auto dst = pooled.row(positions[r]);
    for (std::size_t c = 0; c < src.size(); ++c) dst[column[c]] = src[c];
  }
}

// Mean recall over the classes present in `truth`. Predictions may use any
// label (small folds can miss classes entirely), so this is laxer than the
// public uar(), which derives its class axis from the truth alone.
double subset_uar(const std::vector<std::string> &truth,
                  const std::vector<std::string> &predicted) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> per_class;  // total, correct
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto &entry = per_class[truth[i]];
    ++entry.first;
    if (truth[i] == predicted[i]) ++entry.second;
  }
  double sum = 0.0;
  for (const auto &[cls, counts] : per_class) {
    sum += static_cast<double>(counts.second) / static_cast<double>(counts.first);
  }
  return sum / static_cast<double>(per_class.size());
}

std::vector<std::string> argmax_of(const Matrix &probs,
                                   const std::vector<std::string> &classes) {
  std::vector<std::string> out;
  out.reserve(probs.rows());
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    auto row = probs.row(r);
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    out.push_back(classes[best]);
  }
  return out;
}

void finish_fusion(EvalReport &report, const TaskData &data, double step) {
  std::vector<PosteriorMatrix> posts;
  std::vector<std::string> names;
  for (const auto &s : report.systems) {
    posts.push_back(s.posteriors);
    names.push_back(s.name);
  }
  auto [weights, fused_uar] = grid_search_weights(posts, data.truth, step, names);
  report.fusion_weights = weights;
  report.fusion_uar = fused_uar;
  PosteriorMatrix fused = fuse_posteriors(posts, weights);
  report.fusion_confusion = confusion_matrix(data.truth, argmax_labels(fused));
  report.truth_ids = data.ids;
  report.truth_labels = data.truth;
}

}  // namespace

EvalReport run_cv(const Manifest &m,
                  const std::vector<std::pair<std::string, FeatureTable>> &systems,
                  const std::string &task, const FoldPlan &plan, const CvOptions &options) {
  if (systems.empty()) throw ParameterError("run_cv: no systems");
  if (options.c_grid.empty()) throw ParameterError("run_cv: empty C grid");
  if (plan.k < 2) throw ParameterError("run_cv: need at least 2 folds");

  TaskData data = collect_task_data(m, task);
  const std::size_t m_count = data.ids.size();
  const std::size_t k_classes = data.classes.size();

  std::vector<int> fold_of(m_count);
  for (std::size_t i = 0; i < m_count; ++i) {
    auto it = plan.assignment.find(data.speakers[i]);
    if (it == plan.assignment.end()) {
      throw DataError("run_cv: speaker '" + data.speakers[i] + "' is not in the fold plan");
    }
    fold_of[i] = it->second;
  }

  // Row-aligned feature matrices; select_rows names any missing utterance.
  std::vector<Matrix> features;
  features.reserve(systems.size());
  for (const auto &[name, table] : systems) features.push_back(select_rows(table, data.ids));

  // pooled[s][ci] holds the out-of-fold posteriors over all labeled rows.
  std::vector<std::vector<Matrix>> pooled(
      systems.size(),
      std::vector<Matrix>(options.c_grid.size(), Matrix(m_count, k_classes)));

  for (int fold = 0; fold < plan.k; ++fold) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < m_count; ++i) {
      (fold_of[i] == fold ? test_rows : train_rows).push_back(i);
    }
    if (test_rows.empty()) continue;
    if (train_rows.empty()) {
      throw ParameterError("run_cv: fold " + std::to_string(fold) + " leaves no training data");
    }
    std::vector<std::string> y_train;
    y_train.reserve(train_rows.size());
    for (std::size_t i : train_rows) y_train.push_back(data.truth[i]);

    for (std::size_t s = 0; s < systems.size(); ++s) {
      FeatureTable train_table =
          subset_table(systems[s].first, features[s], data.ids, train_rows);
      FeatureTable test_table =
          subset_table(systems[s].first, features[s], data.ids, test_rows);
      for (std::size_t ci = 0; ci < options.c_grid.size(); ++ci) {
        std::uint64_t job_seed =
            mix_seed(mix_seed(mix_seed(options.seed, static_cast<std::uint64_t>(fold)), s), ci);
        EnsembleModel ens = train_downsampled_ensemble(
            train_table, y_train, options.c_grid[ci], options.repeats, job_seed, options.jobs);
        PosteriorMatrix post = predict_ensemble(ens, test_table, options.jobs);
        scatter_posteriors(post, test_rows, data.classes, pooled[s][ci]);
      }
    }
  }

  EvalReport report;
  report.protocol = "cv";
  report.task = task;
  report.plan = plan;

  for (std::size_t s = 0; s < systems.size(); ++s) {
    SystemEvalResult res;
    res.name = systems[s].first;

    std::size_t best_ci = 0;
    double best_uar = -1.0;
    for (std::size_t ci = 0; ci < options.c_grid.size(); ++ci) {
      double score = uar(data.truth, argmax_of(pooled[s][ci], data.classes));
      if (score > best_uar) {
        best_uar = score;
        best_ci = ci;
      }
    }
    res.best_c = options.c_grid[best_ci];
    res.pooled_uar = best_uar;

    auto predicted = argmax_of(pooled[s][best_ci], data.classes);
    res.confusion = confusion_matrix(data.truth, predicted);
    res.uar_per_fold.assign(static_cast<std::size_t>(plan.k),
                            std::numeric_limits<double>::quiet_NaN());
    for (int fold = 0; fold < plan.k; ++fold) {
      std::vector<std::string> fold_truth, fold_pred;
      for (std::size_t i = 0; i < m_count; ++i) {
        if (fold_of[i] != fold) continue;
        fold_truth.push_back(data.truth[i]);
        fold_pred.push_back(predicted[i]);
      }
      if (!fold_truth.empty()) {
        res.uar_per_fold[static_cast<std::size_t>(fold)] = subset_uar(fold_truth, fold_pred);
      }
    }

    res.posteriors.utterance_ids = data.ids;
    res.posteriors.class_names = data.classes;
    res.posteriors.probs = pooled[s][best_ci];
    report.systems.push_back(std::move(res));
  }

  finish_fusion(report, data, options.fusion_step);
  return report;
}

EvalReport run_dev_protocol(const Manifest &m,
                            const std::vector<std::pair<std::string, FeatureTable>> &systems,
                            const std::string &task, const CvOptions &options) {
  if (systems.empty()) throw ParameterError("run_dev_protocol: no systems");
  if (options.c_grid.empty()) throw ParameterError("run_dev_protocol: empty C grid");

  TaskData all = collect_task_data(m, task);
  std::vector<std::size_t> train_rows, dev_rows;
  {
    std::size_t i = 0;
    for (const auto &rec : m.records) {
      if (rec.labels.find(task) == rec.labels.end()) continue;
      if (rec.split == Split::kTrain) train_rows.push_back(i);
      if (rec.split == Split::kDev) dev_rows.push_back(i);
      ++i;
    }
  }
  if (train_rows.empty()) throw ParameterError("run_dev_protocol: no labeled train records");
  if (dev_rows.empty()) throw ParameterError("run_dev_protocol: no labeled dev records");

  TaskData data;  // the evaluated (dev) slice
  for (std::size_t i : dev_rows) {
    data.ids.push_back(all.ids[i]);
    data.speakers.push_back(all.speakers[i]);
    data.truth.push_back(all.truth[i]);
  }
  // Posterior axis over every task class, so a dev slice that happens to
  // miss a training class still remaps cleanly.
  data.classes = all.classes;

  std::vector<std::string> y_train;
  y_train.reserve(train_rows.size());
  for (std::size_t i : train_rows) y_train.push_back(all.truth[i]);

  EvalReport report;
  report.protocol = "dev";
  report.task = task;

  for (std::size_t s = 0; s < systems.size(); ++s) {
    Matrix rows = select_rows(systems[s].second, all.ids);
    FeatureTable train_table = subset_table(systems[s].first, rows, all.ids, train_rows);
    FeatureTable dev_table = subset_table(systems[s].first, rows, all.ids, dev_rows);

    SystemEvalResult res;
    res.name = systems[s].first;
    double best_uar = -1.0;
    PosteriorMatrix best_post;
    for (std::size_t ci = 0; ci < options.c_grid.size(); ++ci) {
      EnsembleModel ens = train_downsampled_ensemble(
          train_table, y_train, options.c_grid[ci], options.repeats,
          mix_seed(mix_seed(options.seed, s), ci), options.jobs);
      PosteriorMatrix post = predict_ensemble(ens, dev_table, options.jobs);
      double score = uar(data.truth, argmax_labels(post));
      if (score > best_uar) {
        best_uar = score;
        res.best_c = options.c_grid[ci];
        best_post = std::move(post);
      }
    }
    res.pooled_uar = best_uar;
    res.confusion = confusion_matrix(data.truth, argmax_labels(best_post));
    res.posteriors = std::move(best_post);
    report.systems.push_back(std::move(res));
  }

  // Fusion needs every system on the same class axis; onto the dev classes.
  for (auto &res : report.systems) {
    if (res.posteriors.class_names == data.classes) continue;
    Matrix remapped(res.posteriors.probs.rows(), data.classes.size());
    std::vector<std::size_t> all_rows(res.posteriors.probs.rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
    scatter_posteriors(res.posteriors, all_rows, data.classes, remapped);
    res.posteriors.class_names = data.classes;
    res.posteriors.probs = std::move(remapped);
  }

  finish_fusion(report, data, options.fusion_step);
  return report;
}

std::string report_to_json(const EvalReport &r) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["protocol"] = r.protocol;
  j["task"] = r.task;

  auto confusion_json = [](const ConfusionMatrix &cm) {
    nlohmann::json c;
    c["class_names"] = cm.class_names;
    c["counts"] = cm.counts;
    return c;
  };

  nlohmann::json systems = nlohmann::json::array();
  for (const auto &s : r.systems) {
    nlohmann::json js;
    js["name"] = s.name;
    js["best_C"] = s.best_c;
    nlohmann::json folds = nlohmann::json::array();
    for (double v : s.uar_per_fold) {
      if (std::isnan(v)) {
        folds.push_back(nullptr);
      } else {
        folds.push_back(v);
      }
    }
    js["uar_per_fold"] = std::move(folds);
    js["pooled_uar"] = s.pooled_uar;
    js["confusion"] = confusion_json(s.confusion);
    systems.push_back(std::move(js));
  }
  j["systems"] = std::move(systems);

  nlohmann::json fusion;
  fusion["system_names"] = r.fusion_weights.system_names;
  fusion["weights"] = r.fusion_weights.weights;
  fusion["uar"] = r.fusion_uar;
  fusion["confusion"] = confusion_json(r.fusion_confusion);
  j["fusion"] = std::move(fusion);

  nlohmann::json plan;
  plan["k"] = r.plan.k;
  plan["assignment"] = r.plan.assignment;
  j["fold_plan"] = std::move(plan);
  return j.dump(2) + "\n";
}

std::string report_summary(const EvalReport &r) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "task %s  protocol %s", r.task.c_str(), r.protocol.c_str());
  out += buf;
  if (r.plan.k > 0) {
    std::snprintf(buf, sizeof(buf), "  folds %d", r.plan.k);
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof(buf), "  %-24s %10s %8s\n", "system", "best_C", "UAR");
  out += buf;
  for (const auto &s : r.systems) {
    std::snprintf(buf, sizeof(buf), "  %-24s %10g %8.4f\n", s.name.c_str(), s.best_c,
                  s.pooled_uar);
    out += buf;
  }
  std::string weights = "fusion [";
  for (std::size_t i = 0; i < r.fusion_weights.weights.size(); ++i) {
    if (i > 0) weights += ", ";
    std::snprintf(buf, sizeof(buf), "%g", r.fusion_weights.weights[i]);
    weights += buf;
  }
  weights += "]";
  std::snprintf(buf, sizeof(buf), "  %-35s %8.4f\n", weights.c_str(), r.fusion_uar);
  out += buf;
  return out;
}

}  // namespace paralin
