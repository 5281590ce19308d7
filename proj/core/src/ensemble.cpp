// core/src/ensemble.cpp

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

#include "paralin/ensemble.hpp"

#include <algorithm>
#include <map>

#include "json_util.hpp"
#include "paralin/error.hpp"
#include "paralin/parallel.hpp"
#include "paralin/rng.hpp"

namespace paralin {

std::vector<std::size_t> downsample_indices(const std::vector<std::string> &y,
                                            std::uint64_t seed, int repeat) {
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  if (by_class.empty()) throw ParameterError("downsample: no examples");

  std::size_t minority = y.size();
  for (const auto &[cls, idx] : by_class) minority = std::min(minority, idx.size());

  Rng rng(seed, {static_cast<std::uint64_t>(repeat)});
  std::vector<std::size_t> out;
  out.reserve(minority * by_class.size());
  for (const auto &[cls, idx] : by_class) {
    auto picks = rng.sample_indices(idx.size(), minority);
    for (std::size_t p : picks) out.push_back(idx[p]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EnsembleModel train_downsampled_ensemble(const FeatureTable &x,
                                         const std::vector<std::string> &y, double c,
                                         int repeats, std::uint64_t seed, int jobs) {
  if (repeats < 1) throw ParameterError("ensemble: repeats must be positive");
  if (y.size() != x.vectors.rows()) {
    throw DataError("ensemble: label count does not match rows");
  }

  EnsembleModel e;
  e.repeats = repeats;
  e.seed = seed;
  e.members.resize(static_cast<std::size_t>(repeats));

  parallel_for(static_cast<std::size_t>(repeats), jobs, [&](std::size_t r) {
    auto rows = downsample_indices(y, seed, static_cast<int>(r));
    FeatureTable sub;
    sub.feature_set_name = x.feature_set_name;
    std::vector<std::string> sub_y;
    sub_y.reserve(rows.size());
    for (std::size_t i : rows) {
      sub.utterance_ids.push_back(x.utterance_ids[i]);
      sub.vectors.append_row(x.vectors.row(i));
      sub_y.push_back(y[i]);
    }
    e.members[r] = train_linear_svm(sub, sub_y, c, mix_seed(seed, r));
  });
  return e;
}

PosteriorMatrix predict_ensemble(const EnsembleModel &e, const FeatureTable &x, int jobs) {
  if (e.members.empty()) throw ParameterError("ensemble: no members");
  for (const auto &m : e.members) {
    if (m.class_names != e.members.front().class_names ||
        m.feature_dim() != e.members.front().feature_dim()) {
      throw DataError("ensemble: members disagree on classes or feature dimension");
    }
  }

  std::vector<PosteriorMatrix> member_posts(e.members.size());
  parallel_for(e.members.size(), jobs, [&](std::size_t i) {
    member_posts[i] = predict_posteriors(e.members[i], x);
  });

  // Mean in fixed member order, independent of scheduling.
  PosteriorMatrix out = member_posts.front();
  for (std::size_t i = 1; i < member_posts.size(); ++i) {
    const auto &src = member_posts[i].probs.data();
    auto &dst = out.probs.data();
    for (std::size_t v = 0; v < dst.size(); ++v) dst[v] += src[v];
  }
  double inv = 1.0 / static_cast<double>(member_posts.size());
  for (double &v : out.probs.data()) v *= inv;
  return out;
}

std::string ensemble_to_json(const EnsembleModel &e) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["repeats"] = e.repeats;
  j["seed"] = e.seed;
  nlohmann::json members = nlohmann::json::array();
  for (const auto &m : e.members) {
    members.push_back(nlohmann::json::parse(linear_model_to_json(m)));
  }
  j["members"] = std::move(members);
  return j.dump(2) + "\n";
}

EnsembleModel ensemble_from_json(const std::string &text) {
  auto j = detail::parse_json(text, "ensemble");
  detail::check_version(j, "ensemble");
  EnsembleModel e;
  e.repeats = j.at("repeats").get<int>();
  e.seed = j.at("seed").get<std::uint64_t>();
  for (const auto &m : j.at("members")) {
    e.members.push_back(linear_model_from_json(m.dump()));
  }
  if (e.members.empty()) throw FormatError("ensemble: no members");
  return e;
}

void save_ensemble(const EnsembleModel &e, const std::string &path) {
  detail::write_file(path, ensemble_to_json(e));
}

EnsembleModel load_ensemble(const std::string &path) {
  return ensemble_from_json(detail::read_file(path));
}

}  // namespace paralin
