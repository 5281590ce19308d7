// tests/test_cli.cpp

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

// Integration tests against the built `paralin` binary; its path comes from
// the PARALIN_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "paralin/feature_table.hpp"
#include "paralin/posterior.hpp"
#include "paralin/rng.hpp"
#include "paralin/numeric_io.hpp"
#include "test_util.hpp"

using namespace paralin;
using paralin::test::TempDir;
using paralin::test::read_text;
using paralin::test::write_text;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const char *cli_path() {
  const char *p = std::getenv("PARALIN_CLI");
  REQUIRE_MESSAGE(p != nullptr, "PARALIN_CLI must point at the built binary");
  return p;
}

RunResult run_cli(const TempDir &tmp, const std::string &args) {
  std::string out_file = tmp.file("cmd_stdout.txt");
  std::string err_file = tmp.file("cmd_stderr.txt");
  std::string cmd =
      std::string("\"") + cli_path() + "\" " + args + " > " + out_file + " 2> " + err_file;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text(out_file);
  r.err = read_text(err_file);
  return r;
}

// Six speakers, two utterances each, two well-separated classes, D=3.
void write_corpus(const TempDir &tmp) {
  Rng rng(99);
  std::string manifest = "utterance_id,speaker_id,split,mask,frame_feature_path\n";
  for (int s = 0; s < 6; ++s) {
    std::string cls = s % 2 == 0 ? "m" : "c";
    std::string split = s < 4 ? "train" : "dev";
    for (int u = 0; u < 2; ++u) {
      std::string id = "s" + std::to_string(s) + "u" + std::to_string(u);
      manifest += id + ",spk" + std::to_string(s) + "," + split + "," + cls + ",frames/" +
                  id + ".csv\n";
      double mu = cls == "m" ? 0.0 : 8.0;
      std::string body;
      for (int t = 0; t < 40; ++t) {
        for (int d = 0; d < 3; ++d) {
          if (d > 0) body += ",";
          append_double(body, mu + rng.normal());
        }
        body += "\n";
      }
      write_text(tmp.dir("frames") + "/" + id + ".csv", body);
    }
  }
  write_text(tmp.file("m.csv"), manifest);
}

}  // namespace

TEST_CASE("temporal subcommand writes a 15-column table") {
  TempDir tmp;
  write_text(tmp.file("ali.txt"),
             "u1 0.0 0.5 sil\n"
             "u1 0.5 0.25 a\n"
             "u1 0.75 0.25 e\n"
             "u1 1.0 0.5 fp\n");
  auto r = run_cli(tmp, "temporal --alignments " + tmp.file("ali.txt") +
                            " --silent-tokens sil --filled-tokens fp --out " +
                            tmp.file("temp.csv"));
  CHECK(r.exit_code == 0);
  FeatureTable t = load_feature_table(tmp.file("temp.csv"));
  CHECK(t.vectors.cols() == 14);  // + id column = 15 columns
  CHECK(t.utterance_ids == std::vector<std::string>{"u1"});
  CHECK(t.vectors(0, 0) == 2.0);  // 2 phones + 1 filled pause in 1.5 s
}

TEST_CASE("evaluate prints UAR with four decimals") {
  TempDir tmp;
  write_text(tmp.file("labels.csv"), "utterance_id,label\nu1,x\nu2,y\n");
  write_text(tmp.file("post.csv"), "utterance_id,x,y\nu1,0.9,0.1\nu2,0.2,0.8\n");
  auto r = run_cli(tmp, "evaluate --truth " + tmp.file("labels.csv") + " --posteriors " +
                            tmp.file("post.csv"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "UAR 1.0000\n");
}

TEST_CASE("exit codes: usage errors are 1, data errors are 2") {
  TempDir tmp;
  auto unknown = run_cli(tmp, "no-such-subcommand");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("paralin") != std::string::npos);  // usage text

  auto nothing = run_cli(tmp, "");
  CHECK(nothing.exit_code == 1);

  auto missing = run_cli(tmp, "temporal --alignments " + tmp.file("absent.txt") + " --out " +
                                  tmp.file("o.csv"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("absent.txt") != std::string::npos);

  auto incomplete = run_cli(tmp, "temporal --out " + tmp.file("o.csv"));
  CHECK(incomplete.exit_code == 1);
}

TEST_CASE("boaw-learn is byte-identical across runs and by config seed") {
  TempDir tmp;
  write_corpus(tmp);
  std::string base = "boaw-learn --manifest " + tmp.file("m.csv") + " --size 8 ";
  CHECK(run_cli(tmp, base + "--seed 7 --out " + tmp.file("cb1.json")).exit_code == 0);
  CHECK(run_cli(tmp, base + "--seed 7 --out " + tmp.file("cb2.json")).exit_code == 0);
  CHECK(read_text(tmp.file("cb1.json")) == read_text(tmp.file("cb2.json")));

  // CLI flag beats the config file, which beats the default.
  write_text(tmp.file("cfg.txt"), "seed = 7\n");
  CHECK(run_cli(tmp, base + "--config " + tmp.file("cfg.txt") + " --out " +
                         tmp.file("cb3.json"))
            .exit_code == 0);
  CHECK(read_text(tmp.file("cb3.json")) == read_text(tmp.file("cb1.json")));
  CHECK(run_cli(tmp, base + "--config " + tmp.file("cfg.txt") + " --seed 8 --out " +
                         tmp.file("cb4.json"))
            .exit_code == 0);
  CHECK(read_text(tmp.file("cb4.json")) != read_text(tmp.file("cb1.json")));
}

TEST_CASE("staged pipeline through the binary") {
  TempDir tmp;
  write_corpus(tmp);
  const std::string m = tmp.file("m.csv");

  CHECK(run_cli(tmp, "standardize --manifest " + m + " --model-out " + tmp.file("std.json") +
                         " --out-dir " + tmp.dir("std"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "deltas --manifest " + m + " --frames-dir " + tmp.dir("std") +
                         " --out-dir " + tmp.dir("dlt"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "boaw-learn --manifest " + m + " --frames-dir " + tmp.dir("std") +
                         " --size 8 --seed 7 --out " + tmp.file("cb.json"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "boaw-learn --manifest " + m + " --frames-dir " + tmp.dir("dlt") +
                         " --size 8 --seed 7 --source delta --out " + tmp.file("cbd.json"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "boaw-encode --manifest " + m + " --frames-dir " + tmp.dir("std") +
                         " --codebook " + tmp.file("cb.json") + " --delta-codebook " +
                         tmp.file("cbd.json") + " --delta-frames-dir " + tmp.dir("dlt") +
                         " --assignments 5 --out " + tmp.file("boaw.csv"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "gmm-fit --manifest " + m + " --frames-dir " + tmp.dir("std") +
                         " --components 2 --out " + tmp.file("gmm.json"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "fv-encode --manifest " + m + " --frames-dir " + tmp.dir("std") +
                         " --gmm " + tmp.file("gmm.json") + " --out " + tmp.file("fv.csv"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "train --features " + tmp.file("boaw.csv") + " --manifest " + m +
                         " --task mask --c 1 --repeats 3 --out " + tmp.file("model.json"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "predict --model " + tmp.file("model.json") + " --features " +
                         tmp.file("boaw.csv") + " --manifest " + m + " --splits dev --out " +
                         tmp.file("dev1.csv"))
            .exit_code == 0);
  CHECK(run_cli(tmp, "predict --model " + tmp.file("model.json") + " --features " +
                         tmp.file("fv.csv") + " --manifest " + m + " --splits dev --out " +
                         tmp.file("dev_fv.csv"))
            .exit_code == 2);  // dimension mismatch is a data error

  write_text(tmp.file("dev_labels.csv"),
             "utterance_id,label\ns4u0,m\ns4u1,m\ns5u0,c\ns5u1,c\n");
  auto eval = run_cli(tmp, "evaluate --truth " + tmp.file("dev_labels.csv") +
                               " --posteriors " + tmp.file("dev1.csv") + " --confusion");
  CHECK(eval.exit_code == 0);
  CHECK(eval.out.starts_with("UAR 1.0000\n"));
  CHECK(eval.out.find("confusion") != std::string::npos);

  // Fusion of the posterior file with itself: searched weights land on the
  // first system and reproduce the UAR.
  auto fuse = run_cli(tmp, "fuse --posteriors a=" + tmp.file("dev1.csv") +
                               " --posteriors b=" + tmp.file("dev1.csv") + " --truth " +
                               tmp.file("dev_labels.csv") + " --out " + tmp.file("fused.csv"));
  CHECK(fuse.exit_code == 0);
  CHECK(fuse.out.find("weights a=1 b=0") != std::string::npos);
  CHECK(fuse.out.find("UAR 1.0000") != std::string::npos);
  PosteriorMatrix fused = load_posteriors(tmp.file("fused.csv"));
  PosteriorMatrix original = load_posteriors(tmp.file("dev1.csv"));
  CHECK(fused.probs == original.probs);

  // cv subcommand over both protocols.
  auto cv = run_cli(tmp, "cv --manifest " + m + " --features boaw=" + tmp.file("boaw.csv") +
                             " --task mask --folds 3 --repeats 2 --c-grid 0.1,1 --report " +
                             tmp.file("report.json"));
  CHECK(cv.exit_code == 0);
  CHECK(cv.out.find("task mask") != std::string::npos);
  CHECK(read_text(tmp.file("report.json")).find("\"pooled_uar\"") != std::string::npos);

  auto dev = run_cli(tmp, "cv --protocol dev --manifest " + m + " --features boaw=" +
                              tmp.file("boaw.csv") + " --task mask --repeats 2 --c-grid 0.1,1");
  CHECK(dev.exit_code == 0);
  CHECK(dev.out.find("protocol dev") != std::string::npos);
}

TEST_CASE("encoding output is independent of --jobs and inputs are untouched") {
  TempDir tmp;
  write_corpus(tmp);
  const std::string m = tmp.file("m.csv");
  std::string manifest_before = read_text(m);

  CHECK(run_cli(tmp, "boaw-learn --manifest " + m + " --size 8 --seed 3 --out " +
                         tmp.file("cb.json"))
            .exit_code == 0);
  std::string base = "boaw-encode --manifest " + m + " --codebook " + tmp.file("cb.json") +
                     " --assignments 5 ";
  CHECK(run_cli(tmp, base + "--jobs 1 --out " + tmp.file("j1.csv")).exit_code == 0);
  CHECK(run_cli(tmp, base + "--jobs 4 --out " + tmp.file("j4.csv")).exit_code == 0);
  CHECK(read_text(tmp.file("j1.csv")) == read_text(tmp.file("j4.csv")));

  CHECK(read_text(m) == manifest_before);
}
