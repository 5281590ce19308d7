// tools/main.cpp

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

// paralin command-line driver. Every subcommand is a pure file-to-file
// stage: deterministic given its flags, inputs and --seed, and it never
// modifies its inputs. Stages compose through CSV/JSON files so expensive
// encodings can be cached across sweeps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paralin/alignment.hpp"
#include "paralin/boaw.hpp"
#include "paralin/cross_validation.hpp"
#include "paralin/deltas.hpp"
#include "paralin/ensemble.hpp"
#include "paralin/error.hpp"
#include "paralin/evaluation.hpp"
#include "paralin/feature_table.hpp"
#include "paralin/fisher.hpp"
#include "paralin/frame_io.hpp"
#include "paralin/fusion.hpp"
#include "paralin/gmm.hpp"
#include "paralin/manifest.hpp"
#include "paralin/numeric_io.hpp"
#include "paralin/parallel.hpp"
#include "paralin/pipeline.hpp"
#include "paralin/posterior.hpp"
#include "paralin/standardize.hpp"
#include "paralin/svm.hpp"
#include "paralin/temporal.hpp"

namespace fs = std::filesystem;
using namespace paralin;

namespace {

// Flag combinations the parser cannot express; reported as usage errors
// (exit 1), unlike data errors (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 42;
  int jobs = 1;
  double frame_step = 0.010;
};

std::set<std::string> parse_token_set(const std::string &csv) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t pos = csv.find(',', start);
    std::string item = csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!item.empty()) out.insert(item);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string &csv, const std::string &what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t pos = csv.find(',', start);
    std::string item = csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!item.empty()) {
      bool ok = false;
      double v = parse_double(item, &ok);
      if (!ok) throw UsageError(what + ": invalid number '" + item + "'");
      out.push_back(v);
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

// "name=path" or bare "path" (name = file stem).
std::pair<std::string, std::string> parse_named_path(const std::string &spec) {
  std::size_t eq = spec.find('=');
  if (eq == std::string::npos) {
    return {fs::path(spec).stem().string(), spec};
  }
  std::string name = spec.substr(0, eq);
  std::string path = spec.substr(eq + 1);
  if (name.empty() || path.empty()) {
    throw UsageError("expected name=path, got '" + spec + "'");
  }
  return {name, path};
}

// "{n}" in multi-output patterns becomes the size/component count.
std::string expand_pattern(const std::string &pattern, std::size_t n, bool required) {
  std::size_t pos = pattern.find("{n}");
  if (pos == std::string::npos) {
    if (required) {
      throw UsageError("--out must contain '{n}' when multiple sizes are requested");
    }
    return pattern;
  }
  std::string out = pattern;
  out.replace(pos, 3, std::to_string(n));
  return out;
}

FrameSource frame_source(const Manifest &m, const std::string &frames_dir,
                         const GlobalOptions &global) {
  FrameSource src;
  src.manifest_dir = m.directory;
  src.frames_dir = frames_dir;
  src.frame_step = global.frame_step;
  return src;
}

// Labeled rows of the manifest restricted to the given splits, with the
// feature rows pulled from the table in manifest order.
void labeled_subset(const Manifest &m, const FeatureTable &table, const std::string &task,
                    const std::vector<Split> &splits, FeatureTable *x,
                    std::vector<std::string> *y) {
  auto index = row_index(table);
  x->feature_set_name = table.feature_set_name;
  for (const auto &rec : m.records) {
    if (std::find(splits.begin(), splits.end(), rec.split) == splits.end()) continue;
    auto label = rec.labels.find(task);
    if (label == rec.labels.end()) {
      throw DataError("utterance '" + rec.utterance_id + "' has no label for task '" + task +
                      "'");
    }
    auto it = index.find(rec.utterance_id);
    if (it == index.end()) {
      throw DataError("feature table is missing utterance '" + rec.utterance_id + "'");
    }
    x->utterance_ids.push_back(rec.utterance_id);
    x->vectors.append_row(table.vectors.row(it->second));
    y->push_back(label->second);
  }
  if (x->utterance_ids.empty()) {
    throw DataError("no labeled utterances for task '" + task + "' in the requested splits");
  }
}

void write_per_utterance(const Manifest &m, const std::string &out_dir,
                         const std::vector<FrameMatrix> &frames) {
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    save_frame_matrix(frames[i],
                      (fs::path(out_dir) / (frames[i].utterance_id + ".csv")).string());
  }
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

struct DeltasArgs {
  std::string in, out, manifest, frames_dir, out_dir;
  int window = 2;
  bool append = false;
};

int cmd_deltas(const DeltasArgs &a, const GlobalOptions &g) {
  if (!a.in.empty()) {
    if (a.out.empty()) throw UsageError("deltas: --in requires --out");
    FrameMatrix m = load_frame_matrix(a.in, g.frame_step);
    FrameMatrix d = a.append ? append_deltas(m, a.window) : compute_deltas(m, a.window);
    save_frame_matrix(d, a.out);
    return 0;
  }
  if (a.manifest.empty() || a.out_dir.empty()) {
    throw UsageError("deltas: need either --in/--out or --manifest/--out-dir");
  }
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);
  std::vector<FrameMatrix> results(m.records.size());
  parallel_for(m.records.size(), g.jobs, [&](std::size_t i) {
    FrameMatrix frames = load_frames(src, m.records[i]);
    results[i] = a.append ? append_deltas(frames, a.window) : compute_deltas(frames, a.window);
  });
  write_per_utterance(m, a.out_dir, results);
  return 0;
}

struct StandardizeArgs {
  std::string manifest, frames_dir, model, model_out, out_dir;
  std::string fit_splits = "train";
};

int cmd_standardize(const StandardizeArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty()) throw UsageError("standardize: --manifest is required");
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);

  StandardizerModel model;
  if (!a.model.empty()) {
    model = load_standardizer(a.model);
    if (a.out_dir.empty()) {
      throw UsageError("standardize: applying an existing --model requires --out-dir");
    }
  } else {
    if (a.model_out.empty()) {
      throw UsageError("standardize: fitting requires --model-out");
    }
    auto splits = parse_split_list(a.fit_splits);
    StandardizerAccumulator acc;
    for (const auto &rec : m.records) {
      if (std::find(splits.begin(), splits.end(), rec.split) == splits.end()) continue;
      acc.add(load_frames(src, rec).frames);
    }
    model = acc.finalize();
    save_standardizer(model, a.model_out);
  }

  if (!a.out_dir.empty()) {
    std::vector<FrameMatrix> results(m.records.size());
    parallel_for(m.records.size(), g.jobs, [&](std::size_t i) {
      results[i] = apply_standardizer(model, load_frames(src, m.records[i]));
    });
    write_per_utterance(m, a.out_dir, results);
  }
  return 0;
}

// Default sweeps for the codebook and component counts.
const std::vector<std::size_t> kDefaultCodebookSizes = {32,   64,   128,  256,  512,
                                                        1024, 2048, 4096, 8192, 16384};
const std::vector<std::size_t> kDefaultGmmComponents = {2, 4, 8, 16, 32, 64, 128};

struct BoawLearnArgs {
  std::string manifest, frames_dir, out;
  std::string fit_splits = "train";
  std::string source = "lld";
  std::vector<std::size_t> sizes;
};

int cmd_boaw_learn(const BoawLearnArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty() || a.out.empty()) {
    throw UsageError("boaw-learn: --manifest and --out are required");
  }
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);
  Matrix pooled = pool_frames(m, src, parse_split_list(a.fit_splits), g.jobs);

  std::vector<std::size_t> sizes = a.sizes.empty() ? kDefaultCodebookSizes : a.sizes;
  CodebookSource source = codebook_source_from_string(a.source);
  for (std::size_t n : sizes) {
    Codebook cb = learn_codebook(pooled, n, g.seed, source);
    save_codebook(cb, expand_pattern(a.out, n, sizes.size() > 1));
  }
  return 0;
}

struct BoawEncodeArgs {
  std::string manifest, frames_dir, codebook, delta_codebook, delta_frames_dir, out;
  int delta_window = 2;
  int assignments = 5;
};

int cmd_boaw_encode(const BoawEncodeArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty() || a.codebook.empty() || a.out.empty()) {
    throw UsageError("boaw-encode: --manifest, --codebook and --out are required");
  }
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);

  Codebook cb = load_codebook(a.codebook);
  FeatureTable table;
  if (a.delta_codebook.empty()) {
    table = encode_boaw_table(m, src, cb, nullptr, nullptr, a.delta_window, a.assignments,
                              g.jobs, "boaw");
  } else {
    Codebook delta_cb = load_codebook(a.delta_codebook);
    if (a.delta_frames_dir.empty()) {
      table = encode_boaw_table(m, src, cb, &delta_cb, nullptr, a.delta_window, a.assignments,
                                g.jobs, "boaw");
    } else {
      FrameSource delta_src = frame_source(m, a.delta_frames_dir, g);
      table = encode_boaw_table(m, src, cb, &delta_cb, &delta_src, a.delta_window,
                                a.assignments, g.jobs, "boaw");
    }
  }
  save_feature_table(table, a.out);
  return 0;
}

struct GmmFitArgs {
  std::string manifest, frames_dir, out;
  std::string fit_splits = "train";
  std::vector<std::size_t> components;
  int max_iter = 100;
  double tol = 1e-6;
};

int cmd_gmm_fit(const GmmFitArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty() || a.out.empty()) {
    throw UsageError("gmm-fit: --manifest and --out are required");
  }
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);
  Matrix pooled = pool_frames(m, src, parse_split_list(a.fit_splits), g.jobs);

  std::vector<std::size_t> components =
      a.components.empty() ? kDefaultGmmComponents : a.components;
  for (std::size_t k : components) {
    GmmFitOptions opts;
    opts.max_iter = a.max_iter;
    opts.tol = a.tol;
    opts.jobs = g.jobs;
    DiagonalGmm gmm = fit_gmm(pooled, k, g.seed, opts);
    save_gmm(gmm, expand_pattern(a.out, k, components.size() > 1));
  }
  return 0;
}

struct FvEncodeArgs {
  std::string manifest, frames_dir, gmm, out;
};

int cmd_fv_encode(const FvEncodeArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty() || a.gmm.empty() || a.out.empty()) {
    throw UsageError("fv-encode: --manifest, --gmm and --out are required");
  }
  Manifest m = load_manifest(a.manifest);
  FrameSource src = frame_source(m, a.frames_dir, g);
  DiagonalGmm gmm = load_gmm(a.gmm);
  save_feature_table(encode_fisher_table(m, src, gmm, g.jobs, "fv"), a.out);
  return 0;
}

struct TemporalArgs {
  std::string alignments, out;
  std::string silent_tokens = "sil,sp,br";
  std::string filled_tokens = "fp";
};

int cmd_temporal(const TemporalArgs &a, const GlobalOptions &) {
  if (a.alignments.empty() || a.out.empty()) {
    throw UsageError("temporal: --alignments and --out are required");
  }
  auto alis = parse_alignment(a.alignments, parse_token_set(a.silent_tokens),
                              parse_token_set(a.filled_tokens));
  FeatureTable table;
  table.feature_set_name = "temporal";
  for (const auto &ali : alis) {
    auto features = compute_temporal_features(ali).to_array();
    table.utterance_ids.push_back(ali.utterance_id);
    table.vectors.append_row(std::vector<double>(features.begin(), features.end()));
  }
  save_feature_table(table, a.out);
  return 0;
}

struct TrainArgs {
  std::string features, manifest, task, out;
  std::string train_splits = "train";
  double c = 1.0;
  int repeats = 1;
  bool full = false;
};

int cmd_train(const TrainArgs &a, const GlobalOptions &g) {
  if (a.features.empty() || a.manifest.empty() || a.task.empty() || a.out.empty()) {
    throw UsageError("train: --features, --manifest, --task and --out are required");
  }
  Manifest m = load_manifest(a.manifest);
  FeatureTable table = load_feature_table(a.features);
  FeatureTable x;
  std::vector<std::string> y;
  labeled_subset(m, table, a.task, parse_split_list(a.train_splits), &x, &y);

  if (a.full) {
    LinearModel model = train_linear_svm(x, y, a.c, g.seed);
    std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(a.out + ": cannot open for writing");
    out << linear_model_to_json(model);
  } else {
    EnsembleModel e = train_downsampled_ensemble(x, y, a.c, a.repeats, g.seed, g.jobs);
    save_ensemble(e, a.out);
  }
  return 0;
}

struct PredictArgs {
  std::string model, features, out, manifest, splits;
};

int cmd_predict(const PredictArgs &a, const GlobalOptions &g) {
  if (a.model.empty() || a.features.empty() || a.out.empty()) {
    throw UsageError("predict: --model, --features and --out are required");
  }
  if (a.manifest.empty() != a.splits.empty()) {
    throw UsageError("predict: --manifest and --splits go together");
  }
  FeatureTable table = load_feature_table(a.features);

  if (!a.manifest.empty() && !a.splits.empty()) {
    Manifest m = load_manifest(a.manifest);
    auto splits = parse_split_list(a.splits);
    auto index = row_index(table);
    FeatureTable filtered;
    filtered.feature_set_name = table.feature_set_name;
    for (const auto &rec : m.records) {
      if (std::find(splits.begin(), splits.end(), rec.split) == splits.end()) continue;
      auto it = index.find(rec.utterance_id);
      if (it == index.end()) {
        throw DataError("feature table is missing utterance '" + rec.utterance_id + "'");
      }
      filtered.utterance_ids.push_back(rec.utterance_id);
      filtered.vectors.append_row(table.vectors.row(it->second));
    }
    table = std::move(filtered);
  }

  std::ifstream in(a.model, std::ios::binary);
  if (!in) throw IoError(a.model + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError(a.model + ": invalid JSON");

  PosteriorMatrix p;
  if (j.contains("members")) {
    p = predict_ensemble(ensemble_from_json(text), table, g.jobs);
  } else {
    p = predict_posteriors(linear_model_from_json(text), table);
  }
  save_posteriors(p, a.out);
  return 0;
}

struct EvaluateArgs {
  std::string truth, posteriors;
  bool confusion = false;
};

int cmd_evaluate(const EvaluateArgs &a, const GlobalOptions &) {
  if (a.truth.empty() || a.posteriors.empty()) {
    throw UsageError("evaluate: --truth and --posteriors are required");
  }
  auto labels = load_label_csv(a.truth);
  std::map<std::string, std::string> truth_of(labels.begin(), labels.end());

  PosteriorMatrix p = load_posteriors(a.posteriors);
  std::vector<std::string> truth;
  for (const auto &id : p.utterance_ids) {
    auto it = truth_of.find(id);
    if (it == truth_of.end()) {
      throw DataError(a.truth + ": no label for utterance '" + id + "'");
    }
    truth.push_back(it->second);
  }
  auto predicted = argmax_labels(p);
  ConfusionMatrix cm = confusion_matrix(truth, predicted);

  char buf[64];
  std::snprintf(buf, sizeof(buf), "UAR %.4f\n", uar(cm));
  std::cout << buf;
  if (a.confusion) {
    std::cout << "confusion (rows = truth, columns = predicted):\n";
    for (std::size_t r = 0; r < cm.class_names.size(); ++r) {
      std::cout << "  " << cm.class_names[r] << ":";
      for (std::int64_t v : cm.counts[r]) std::cout << " " << v;
      std::cout << "\n";
    }
  }
  return 0;
}

struct FuseArgs {
  std::vector<std::string> posteriors;
  std::string weights, truth, out;
  double step = 0.05;
};

int cmd_fuse(const FuseArgs &a, const GlobalOptions &) {
  if (a.posteriors.empty()) throw UsageError("fuse: at least one --posteriors is required");
  if (a.weights.empty() && a.truth.empty()) {
    throw UsageError("fuse: need --weights to apply or --truth to grid-search them");
  }

  std::vector<std::string> names;
  std::vector<PosteriorMatrix> systems;
  for (const auto &spec : a.posteriors) {
    auto [name, path] = parse_named_path(spec);
    names.push_back(name);
    systems.push_back(load_posteriors(path));
  }

  FusionWeights w;
  double achieved = -1.0;
  if (!a.weights.empty()) {
    w.system_names = names;
    w.weights = parse_double_list(a.weights, "fuse --weights");
  } else {
    auto labels = load_label_csv(a.truth);
    std::map<std::string, std::string> truth_of(labels.begin(), labels.end());
    std::vector<std::string> truth;
    for (const auto &id : systems.front().utterance_ids) {
      auto it = truth_of.find(id);
      if (it == truth_of.end()) {
        throw DataError(a.truth + ": no label for utterance '" + id + "'");
      }
      truth.push_back(it->second);
    }
    auto [weights, score] = grid_search_weights(systems, truth, a.step, names);
    w = weights;
    achieved = score;
  }

  PosteriorMatrix fused = fuse_posteriors(systems, w);
  if (!a.out.empty()) save_posteriors(fused, a.out);

  std::string line = "weights";
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    line += " " + names[i] + "=" + format_double(w.weights[i]);
  }
  std::cout << line << "\n";
  if (achieved >= 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "UAR %.4f\n", achieved);
    std::cout << buf;
  }
  return 0;
}

struct CvArgs {
  std::string manifest, report;
  std::vector<std::string> features;
  std::vector<std::string> tasks;
  std::string protocol = "cv";
  std::string c_grid = "1e-5,1e-4,1e-3,1e-2,1e-1,1,10";
  int folds = 10;
  int repeats = 100;
  double step = 0.05;
};

int cmd_cv(const CvArgs &a, const GlobalOptions &g) {
  if (a.manifest.empty() || a.features.empty() || a.tasks.empty()) {
    throw UsageError("cv: --manifest, --features and --task are required");
  }
  if (a.protocol != "cv" && a.protocol != "dev") {
    throw UsageError("cv: --protocol must be cv or dev");
  }
  Manifest m = load_manifest(a.manifest);

  std::vector<std::pair<std::string, FeatureTable>> systems;
  for (const auto &spec : a.features) {
    auto [name, path] = parse_named_path(spec);
    systems.emplace_back(name, load_feature_table(path, name));
  }

  CvOptions opts;
  opts.c_grid = parse_double_list(a.c_grid, "cv --c-grid");
  opts.repeats = a.repeats;
  opts.fusion_step = a.step;
  opts.seed = g.seed;
  opts.jobs = g.jobs;

  std::vector<EvalReport> reports;
  for (const auto &task : a.tasks) {
    EvalReport report;
    if (a.protocol == "cv") {
      FoldPlan plan = make_speaker_folds(m, a.folds, g.seed);
      report = run_cv(m, systems, task, plan, opts);
    } else {
      report = run_dev_protocol(m, systems, task, opts);
    }
    std::cout << report_summary(report);
    reports.push_back(std::move(report));
  }

  if (reports.size() > 1) {
    double mean = 0.0;
    for (const auto &r : reports) mean += r.fusion_uar;
    mean /= static_cast<double>(reports.size());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "mean fused UAR over tasks %.4f\n", mean);
    std::cout << buf;
  }

  if (!a.report.empty()) {
    std::string text;
    if (reports.size() == 1) {
      text = report_to_json(reports.front());
    } else {
      nlohmann::json j;
      j["format_version"] = 1;
      nlohmann::json tasks = nlohmann::json::array();
      double mean = 0.0;
      for (const auto &r : reports) {
        tasks.push_back(nlohmann::json::parse(report_to_json(r)));
        mean += r.fusion_uar;
      }
      j["tasks"] = std::move(tasks);
      j["mean_fused_uar"] = mean / static_cast<double>(reports.size());
      text = j.dump(2) + "\n";
    }
    std::ofstream out(a.report, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(a.report + ": cannot open for writing");
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"utterance-level audio representations, calibrated SVM ensembles and fusion"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat `key = value` configuration file");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for every random draw")->capture_default_str();
  app.add_option("--jobs", global.jobs, "internal parallelism; results do not depend on it")
      ->capture_default_str();
  app.add_option("--frame-step", global.frame_step, "seconds per frame")
      ->capture_default_str();

  DeltasArgs deltas_args;
  auto *sc_deltas = app.add_subcommand("deltas", "first-order derivatives of frame features");
  sc_deltas->fallthrough();
  sc_deltas->add_option("--in", deltas_args.in, "single frame-matrix CSV input");
  sc_deltas->add_option("--out", deltas_args.out, "single-file output path");
  sc_deltas->add_option("--manifest", deltas_args.manifest, "manifest CSV");
  sc_deltas->add_option("--frames-dir", deltas_args.frames_dir,
                        "read <dir>/<utterance_id>.csv instead of manifest paths");
  sc_deltas->add_option("--out-dir", deltas_args.out_dir, "per-utterance output directory");
  sc_deltas->add_option("--window", deltas_args.window, "regression window")
      ->capture_default_str();
  sc_deltas->add_flag("--append", deltas_args.append,
                      "emit [x | delta(x)] instead of the deltas alone");

  StandardizeArgs std_args;
  auto *sc_std = app.add_subcommand("standardize", "fit and/or apply z-normalization");
  sc_std->fallthrough();
  sc_std->add_option("--manifest", std_args.manifest, "manifest CSV");
  sc_std->add_option("--frames-dir", std_args.frames_dir, "frame directory override");
  sc_std->add_option("--model", std_args.model, "apply this model instead of fitting");
  sc_std->add_option("--model-out", std_args.model_out, "where to write the fitted model");
  sc_std->add_option("--out-dir", std_args.out_dir, "per-utterance standardized output");
  sc_std->add_option("--fit-splits", std_args.fit_splits, "splits the statistics pool over")
      ->capture_default_str();

  BoawLearnArgs bl_args;
  auto *sc_bl = app.add_subcommand("boaw-learn", "sample a BoAW codebook from training frames");
  sc_bl->fallthrough();
  sc_bl->add_option("--manifest", bl_args.manifest, "manifest CSV");
  sc_bl->add_option("--frames-dir", bl_args.frames_dir, "frame directory override");
  sc_bl->add_option("--size", bl_args.sizes,
                    "codebook size, repeatable (default sweep 32..16384)");
  sc_bl->add_option("--source", bl_args.source, "lld or delta")->capture_default_str();
  sc_bl->add_option("--fit-splits", bl_args.fit_splits, "splits the frames pool over")
      ->capture_default_str();
  sc_bl->add_option("--out", bl_args.out, "output JSON; use {n} with multiple sizes");

  BoawEncodeArgs be_args;
  auto *sc_be = app.add_subcommand("boaw-encode", "encode utterances against a codebook");
  sc_be->fallthrough();
  sc_be->add_option("--manifest", be_args.manifest, "manifest CSV");
  sc_be->add_option("--frames-dir", be_args.frames_dir, "frame directory override");
  sc_be->add_option("--codebook", be_args.codebook, "codebook JSON");
  sc_be->add_option("--delta-codebook", be_args.delta_codebook,
                    "optional codebook for the derivative stream");
  sc_be->add_option("--delta-frames-dir", be_args.delta_frames_dir,
                    "read the delta stream from files instead of computing it");
  sc_be->add_option("--delta-window", be_args.delta_window,
                    "window when computing deltas inline")
      ->capture_default_str();
  sc_be->add_option("--assignments", be_args.assignments, "parallel cluster assignments")
      ->capture_default_str();
  sc_be->add_option("--out", be_args.out, "feature table CSV output");

  GmmFitArgs gf_args;
  auto *sc_gf = app.add_subcommand("gmm-fit", "EM-fit a diagonal GMM on training frames");
  sc_gf->fallthrough();
  sc_gf->add_option("--manifest", gf_args.manifest, "manifest CSV");
  sc_gf->add_option("--frames-dir", gf_args.frames_dir, "frame directory override");
  sc_gf->add_option("--components", gf_args.components,
                    "component count, repeatable (default sweep 2..128)");
  sc_gf->add_option("--max-iter", gf_args.max_iter, "EM iteration cap")->capture_default_str();
  sc_gf->add_option("--tol", gf_args.tol, "per-frame log-likelihood improvement tolerance")
      ->capture_default_str();
  sc_gf->add_option("--fit-splits", gf_args.fit_splits, "splits the frames pool over")
      ->capture_default_str();
  sc_gf->add_option("--out", gf_args.out, "output JSON; use {n} with multiple counts");

  FvEncodeArgs fv_args;
  auto *sc_fv = app.add_subcommand("fv-encode", "Fisher-vector encode utterances");
  sc_fv->fallthrough();
  sc_fv->add_option("--manifest", fv_args.manifest, "manifest CSV");
  sc_fv->add_option("--frames-dir", fv_args.frames_dir, "frame directory override");
  sc_fv->add_option("--gmm", fv_args.gmm, "GMM JSON");
  sc_fv->add_option("--out", fv_args.out, "feature table CSV output");

  TemporalArgs t_args;
  auto *sc_t = app.add_subcommand("temporal", "14 tempo and pause features from alignments");
  sc_t->fallthrough();
  sc_t->add_option("--alignments", t_args.alignments, "alignment text file");
  sc_t->add_option("--silent-tokens", t_args.silent_tokens, "comma-separated silent tokens")
      ->capture_default_str();
  sc_t->add_option("--filled-tokens", t_args.filled_tokens, "comma-separated filled tokens")
      ->capture_default_str();
  sc_t->add_option("--out", t_args.out, "feature table CSV output");

  TrainArgs tr_args;
  auto *sc_tr = app.add_subcommand("train", "train a calibrated linear SVM (ensemble)");
  sc_tr->fallthrough();
  sc_tr->add_option("--features", tr_args.features, "feature table CSV");
  sc_tr->add_option("--manifest", tr_args.manifest, "manifest CSV with labels");
  sc_tr->add_option("--task", tr_args.task, "label column to train on");
  sc_tr->add_option("--c", tr_args.c, "SVM regularization C")->capture_default_str();
  sc_tr->add_option("--repeats", tr_args.repeats, "downsampled ensemble members")
      ->capture_default_str();
  sc_tr->add_flag("--full", tr_args.full,
                  "train one model on all rows instead of a downsampled ensemble");
  sc_tr->add_option("--train-splits", tr_args.train_splits, "splits to train on")
      ->capture_default_str();
  sc_tr->add_option("--out", tr_args.out, "model JSON output");

  PredictArgs p_args;
  auto *sc_p = app.add_subcommand("predict", "posterior probabilities for a feature table");
  sc_p->fallthrough();
  sc_p->add_option("--model", p_args.model, "model JSON (single or ensemble)");
  sc_p->add_option("--features", p_args.features, "feature table CSV");
  sc_p->add_option("--manifest", p_args.manifest, "optional manifest for split filtering");
  sc_p->add_option("--splits", p_args.splits, "comma-separated splits to keep");
  sc_p->add_option("--out", p_args.out, "posterior CSV output");

  EvaluateArgs e_args;
  auto *sc_e = app.add_subcommand("evaluate", "UAR of posteriors against labels");
  sc_e->fallthrough();
  sc_e->add_option("--truth", e_args.truth, "label CSV (utterance_id,label)");
  sc_e->add_option("--posteriors", e_args.posteriors, "posterior CSV");
  sc_e->add_flag("--confusion", e_args.confusion, "also print the confusion matrix");

  FuseArgs f_args;
  auto *sc_f = app.add_subcommand("fuse", "weighted mean of per-system posteriors");
  sc_f->fallthrough();
  sc_f->add_option("--posteriors", f_args.posteriors,
                   "posterior CSV, repeatable, optionally name=path");
  sc_f->add_option("--weights", f_args.weights, "comma-separated weights summing to 1");
  sc_f->add_option("--truth", f_args.truth, "label CSV; grid-search weights against it");
  sc_f->add_option("--step", f_args.step, "weight grid increment")->capture_default_str();
  sc_f->add_option("--out", f_args.out, "fused posterior CSV output");

  CvArgs cv_args;
  auto *sc_cv = app.add_subcommand("cv", "speaker-independent CV or train/dev evaluation");
  sc_cv->fallthrough();
  sc_cv->add_option("--manifest", cv_args.manifest, "manifest CSV");
  sc_cv->add_option("--features", cv_args.features, "name=path feature table, repeatable");
  sc_cv->add_option("--task", cv_args.tasks, "label column, repeatable");
  sc_cv->add_option("--protocol", cv_args.protocol, "cv or dev")->capture_default_str();
  sc_cv->add_option("--folds", cv_args.folds, "fold count")->capture_default_str();
  sc_cv->add_option("--repeats", cv_args.repeats, "ensemble members per training")
      ->capture_default_str();
  sc_cv->add_option("--c-grid", cv_args.c_grid, "comma-separated C values")
      ->capture_default_str();
  sc_cv->add_option("--step", cv_args.step, "fusion weight grid increment")
      ->capture_default_str();
  sc_cv->add_option("--report", cv_args.report, "report JSON output");

  try {
    app.parse(argc, argv);

    if (*sc_deltas) return cmd_deltas(deltas_args, global);
    if (*sc_std) return cmd_standardize(std_args, global);
    if (*sc_bl) return cmd_boaw_learn(bl_args, global);
    if (*sc_be) return cmd_boaw_encode(be_args, global);
    if (*sc_gf) return cmd_gmm_fit(gf_args, global);
    if (*sc_fv) return cmd_fv_encode(fv_args, global);
    if (*sc_t) return cmd_temporal(t_args, global);
    if (*sc_tr) return cmd_train(tr_args, global);
    if (*sc_p) return cmd_predict(p_args, global);
    if (*sc_e) return cmd_evaluate(e_args, global);
    if (*sc_f) return cmd_fuse(f_args, global);
    if (*sc_cv) return cmd_cv(cv_args, global);
    std::cerr << "error: no subcommand\n" << app.help();
    return 1;
  } catch (const CLI::CallForHelp &) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 1;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 1;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
