// tests/test_dataset.cpp

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

#include "paralin/deltas.hpp"
#include "paralin/error.hpp"
#include "paralin/feature_table.hpp"
#include "paralin/frame_io.hpp"
#include "paralin/manifest.hpp"
#include "paralin/rng.hpp"
#include "paralin/standardize.hpp"
#include "test_util.hpp"

using namespace paralin;
using paralin::test::TempDir;
using paralin::test::read_text;
using paralin::test::write_text;

TEST_CASE("load_manifest parses records and task names") {
  TempDir tmp;
  auto path = tmp.file("m.csv");
  write_text(path,
             "utterance_id,speaker_id,split,mask,frame_feature_path\n"
             "u1,s1,train,clear,u1.csv\n"
             "u2,s1,dev,mask,u2.csv\n"
             "u3,s2,test,,u3.csv\n");
  Manifest m = load_manifest(path);
  CHECK(m.records.size() == 3);
  CHECK(m.task_names == std::vector<std::string>{"mask"});
  CHECK(m.records[0].labels.at("mask") == "clear");
  CHECK(m.records[1].split == Split::kDev);
  CHECK(m.records[2].split == Split::kTest);
  CHECK(m.records[2].labels.empty());
  CHECK(m.records[0].frame_feature_path == "u1.csv");
}

TEST_CASE("load_manifest rejects duplicate utterance ids") {
  TempDir tmp;
  auto path = tmp.file("m.csv");
  write_text(path,
             "utterance_id,speaker_id,split\n"
             "u1,s1,train\n"
             "u1,s2,train\n");
  CHECK_THROWS_AS(load_manifest(path), IntegrityError);
}

TEST_CASE("load_manifest requires labels on train rows") {
  TempDir tmp;
  auto path = tmp.file("m.csv");
  write_text(path,
             "utterance_id,speaker_id,split,arousal\n"
             "u1,s1,train,\n");
  CHECK_THROWS_WITH_AS(load_manifest(path),
                       doctest::Contains("missing label arousal"), FormatError);
}

TEST_CASE("load_manifest reports missing required columns and bad splits") {
  TempDir tmp;
  auto path = tmp.file("m.csv");
  write_text(path, "utterance_id,speaker_id\nu1,s1\n");
  CHECK_THROWS_WITH_AS(load_manifest(path), doctest::Contains("split"), FormatError);
  write_text(path, "utterance_id,speaker_id,split\nu1,s1,validation\n");
  CHECK_THROWS_AS(load_manifest(path), FormatError);
  write_text(path, "utterance_id,speaker_id,split\nu1,,train\n");
  CHECK_THROWS_AS(load_manifest(path), FormatError);
}

TEST_CASE("load_manifest picks up extfeat and alignment columns") {
  TempDir tmp;
  auto path = tmp.file("m.csv");
  write_text(path,
             "utterance_id,speaker_id,split,extfeat:bert,alignment_id\n"
             "u1,s1,test,bert/u1.csv,ali1\n"
             "u2,s1,test,,\n");
  Manifest m = load_manifest(path);
  CHECK(m.task_names.empty());
  CHECK(m.records[0].external_feature_paths.at("bert") == "bert/u1.csv");
  CHECK(m.records[0].alignment_present());
  CHECK_FALSE(m.records[1].alignment_present());
}

TEST_CASE("load_frame_matrix parses a rectangular file") {
  TempDir tmp;
  auto path = tmp.file("u1.csv");
  write_text(path, "1,2\n3,4\n");
  FrameMatrix m = load_frame_matrix(path);
  CHECK(m.frames.rows() == 2);
  CHECK(m.frames.cols() == 2);
  CHECK(m.frames(0, 0) == 1.0);
  CHECK(m.frames(1, 1) == 4.0);
  CHECK(m.utterance_id == "u1");
}

TEST_CASE("load_frame_matrix error cases") {
  TempDir tmp;
  auto path = tmp.file("bad.csv");
  write_text(path, "");
  CHECK_THROWS_WITH_AS(load_frame_matrix(path), doctest::Contains("no frames"), FormatError);
  write_text(path, "1,2\n3\n");
  CHECK_THROWS_WITH_AS(load_frame_matrix(path), doctest::Contains("ragged row 2"),
                       FormatError);
  write_text(path, "1,x\n");
  CHECK_THROWS_WITH_AS(load_frame_matrix(path), doctest::Contains("column 2"), FormatError);
  CHECK_THROWS_AS(load_frame_matrix(tmp.file("missing.csv")), IoError);
}

TEST_CASE("frame matrix round-trips bit-identically") {
  TempDir tmp;
  Rng rng(7);
  FrameMatrix m;
  m.utterance_id = "u";
  m.frames = Matrix(13, 5);
  for (double &v : m.frames.data()) v = rng.normal() * 1e3;
  m.frames(0, 0) = 0.1;  // not exactly representable
  m.frames(1, 1) = -1e-300;

  auto p1 = tmp.file("a.csv");
  auto p2 = tmp.file("b.csv");
  save_frame_matrix(m, p1);
  FrameMatrix loaded = load_frame_matrix(p1);
  CHECK(loaded.frames == m.frames);
  save_frame_matrix(loaded, p2);
  CHECK(read_text(p1) == read_text(p2));
}

TEST_CASE("compute_deltas of a constant matrix is zero") {
  FrameMatrix m;
  m.frames = Matrix::from_rows({{2.0, -1.0}, {2.0, -1.0}, {2.0, -1.0}});
  FrameMatrix d = compute_deltas(m, 2);
  for (double v : d.frames.data()) CHECK(v == 0.0);
}

TEST_CASE("compute_deltas of a unit ramp") {
  // x_t = t, T=10, W=2: interior slope exactly 1, edges damped by
  // replication.
  FrameMatrix m;
  for (int t = 0; t < 10; ++t) m.frames.append_row(std::vector<double>{double(t)});
  FrameMatrix d = compute_deltas(m, 2);
  const double expected[10] = {0.5, 0.8, 1, 1, 1, 1, 1, 1, 0.8, 0.5};
  for (int t = 0; t < 10; ++t) CHECK(d.frames(t, 0) == doctest::Approx(expected[t]).epsilon(1e-15));
  for (int t = 2; t < 8; ++t) CHECK(d.frames(t, 0) == 1.0);
}

TEST_CASE("compute_deltas of a single frame is zero") {
  FrameMatrix m;
  m.frames = Matrix::from_rows({{5.0, 6.0, 7.0}});
  FrameMatrix d = compute_deltas(m, 2);
  CHECK(d.frames.rows() == 1);
  for (double v : d.frames.data()) CHECK(v == 0.0);
}

TEST_CASE("compute_deltas is shift-equivariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t t_count = 2 + rng.below(30);
    std::size_t dim = 1 + rng.below(4);
    FrameMatrix m;
    m.frames = Matrix(t_count, dim);
    for (double &v : m.frames.data()) v = rng.normal();
    std::vector<double> offset(dim);
    for (double &v : offset) v = 10.0 * rng.normal();

    FrameMatrix shifted = m;
    for (std::size_t t = 0; t < t_count; ++t) {
      auto row = shifted.frames.row(t);
      for (std::size_t c = 0; c < dim; ++c) row[c] += offset[c];
    }
    FrameMatrix d1 = compute_deltas(m, 2);
    FrameMatrix d2 = compute_deltas(shifted, 2);
    for (std::size_t i = 0; i < d1.frames.data().size(); ++i) {
      CHECK(d1.frames.data()[i] == doctest::Approx(d2.frames.data()[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("append_deltas doubles the dimension") {
  FrameMatrix m;
  m.frames = Matrix::from_rows({{1.0}, {2.0}, {3.0}});
  FrameMatrix a = append_deltas(m, 1);
  CHECK(a.frames.cols() == 2);
  CHECK(a.frames(1, 0) == 2.0);
  CHECK(a.frames(1, 1) == 1.0);  // slope of the ramp
}

TEST_CASE("fit_standardizer hand examples") {
  FrameMatrix a;
  a.frames = Matrix::from_rows({{0.0}, {2.0}});
  std::vector<FrameMatrix> ms{a};
  StandardizerModel s = fit_standardizer(ms);
  CHECK(s.mean == std::vector<double>{1.0});
  CHECK(s.std == std::vector<double>{1.0});
  CHECK(s.fitted_on == 2);

  FrameMatrix single;
  single.frames = Matrix::from_rows({{5.0, 7.0}});
  std::vector<FrameMatrix> one{single};
  StandardizerModel s1 = fit_standardizer(one);
  CHECK(s1.mean == std::vector<double>{5.0, 7.0});
  CHECK(s1.std == std::vector<double>{0.0, 0.0});

  FrameMatrix constant;
  constant.frames = Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
  std::vector<FrameMatrix> cs{constant};
  CHECK(fit_standardizer(cs).std == std::vector<double>{0.0, 0.0});
}

TEST_CASE("apply_standardizer maps and zeroes degenerate dimensions") {
  StandardizerModel s;
  s.mean = {1.0};
  s.std = {1.0};
  FrameMatrix m;
  m.frames = Matrix::from_rows({{3.0}});
  CHECK(apply_standardizer(s, m).frames(0, 0) == 2.0);

  s.std = {0.0};
  CHECK(apply_standardizer(s, m).frames(0, 0) == 0.0);

  StandardizerModel wrong;
  wrong.mean = {0.0, 0.0};
  wrong.std = {1.0, 1.0};
  CHECK_THROWS_AS(apply_standardizer(wrong, m), DataError);
}

TEST_CASE("standardizing the fitting data yields mean 0 and std 1") {
  Rng rng(23);
  std::vector<FrameMatrix> ms;
  for (int u = 0; u < 5; ++u) {
    FrameMatrix m;
    m.frames = Matrix(20 + rng.below(30), 3);
    for (double &v : m.frames.data()) v = 4.0 * rng.normal() - 2.0;
    ms.push_back(std::move(m));
  }
  StandardizerModel s = fit_standardizer(ms);

  StandardizerAccumulator check;
  for (const auto &m : ms) check.add(apply_standardizer(s, m).frames);
  StandardizerModel pooled = check.finalize();
  for (double v : pooled.mean) CHECK(std::abs(v) < 1e-9);
  for (double v : pooled.std) CHECK(std::abs(v - 1.0) < 1e-9);
}

TEST_CASE("standardizer fit rejects dimension mismatch and empty input") {
  StandardizerAccumulator acc;
  acc.add(Matrix::from_rows({{1.0, 2.0}}));
  CHECK_THROWS_AS(acc.add(Matrix::from_rows({{1.0}})), DataError);
  StandardizerAccumulator empty;
  CHECK_THROWS_AS(empty.finalize(), ParameterError);
}

TEST_CASE("standardizer serialization round-trips") {
  TempDir tmp;
  StandardizerModel s;
  s.mean = {0.25, -3.5};
  s.std = {1.75, 0.0};
  s.fitted_on = 42;
  auto path = tmp.file("std.json");
  save_standardizer(s, path);
  StandardizerModel loaded = load_standardizer(path);
  CHECK(loaded.mean == s.mean);
  CHECK(loaded.std == s.std);
  CHECK(loaded.fitted_on == 42);
  // Re-serialization is byte-identical.
  CHECK(standardizer_to_json(loaded) == standardizer_to_json(s));
}

TEST_CASE("feature table round-trip and row selection") {
  TempDir tmp;
  FeatureTable t;
  t.utterance_ids = {"u1", "u2"};
  t.vectors = Matrix::from_rows({{1.5, 2.0}, {-0.25, 4.0}});
  auto path = tmp.file("ft.csv");
  save_feature_table(t, path);
  CHECK(read_text(path).starts_with("utterance_id,f0,f1\n"));
  FeatureTable loaded = load_feature_table(path, "sys");
  CHECK(loaded.feature_set_name == "sys");
  CHECK(loaded.utterance_ids == t.utterance_ids);
  CHECK(loaded.vectors == t.vectors);

  Matrix picked = select_rows(loaded, {"u2", "u1"});
  CHECK(picked(0, 1) == 4.0);
  CHECK_THROWS_WITH_AS(select_rows(loaded, {"u3"}), doctest::Contains("u3"), DataError);
}
