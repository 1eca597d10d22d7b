// Copyright 2026 The topicdrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "topicdrift/error.hpp"
#include "topicdrift/pipeline.hpp"
#include "topicdrift/textio.hpp"

using namespace topicdrift;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(TOPICDRIFT_SOURCE_DIR) / "data" / "fixtures";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("topicdrift-unit-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PipelineConfig synthetic_config(const fs::path& out) {
  const fs::path dir = kFixtures / "synthetic";
  PipelineConfig c = PipelineConfig::from_settings(load_settings(dir / "config.txt"));
  c.corpus = dir / c.corpus;
  c.schedule = dir / c.schedule;
  c.out = out;
  return c;
}

}  // namespace

TEST_CASE("pipeline on the synthetic fixture") {
  TempDir tmp("pipeline");
  const PipelineConfig config = synthetic_config(tmp.path / "run");
  const PipelineResult result = run_pipeline(config);

  CHECK(result.state.chunks.size() == 3);
  CHECK(result.detection.change_count() == 1);
  for (const char* name : {"changes.csv", "similarities.csv", "impacts.csv", "topwords.csv",
                           "shares.csv", "summary.csv", "manifest.txt", "checkpoint.txt",
                           "vocab.txt"}) {
    CHECK_MESSAGE(fs::exists(config.out / name), name);
  }
  const std::string changes = textio::read_file(config.out / "changes.csv");
  CHECK(changes.find(",2,2020-03-01/2020-04-01,") != std::string::npos);

  const std::string manifest = textio::read_file(config.out / "manifest.txt");
  CHECK(manifest.find("config.k=2") != std::string::npos);
  CHECK(manifest.find("config.seed=7") != std::string::npos);
  CHECK(manifest.find("fnv1a64.changes.csv=") != std::string::npos);
  CHECK(manifest.find("threads") == std::string::npos);

  const Settings recorded = load_manifest_config(config.out);
  CHECK(recorded.at("k") == "2");
  CHECK_FALSE(recorded.contains("out"));

  // Re-running detection from the checkpoint reproduces the reports.
  PipelineConfig again = config;
  again.out = tmp.path / "again";
  again.threads = 3;
  RollingState state = load_checkpoint(config.out / kCheckpointFile);
  CHECK(state.chunks == result.state.chunks);
  rerun_reports(again, std::move(state), ReportSet::kDetection, "detect");
  CHECK(textio::read_file(again.out / "changes.csv") == changes);
  CHECK(textio::read_file(again.out / "impacts.csv") ==
        textio::read_file(config.out / "impacts.csv"));
  CHECK_FALSE(fs::exists(again.out / "topwords.csv"));
}

TEST_CASE("pipeline argument errors") {
  TempDir tmp("pipeline-errors");
  PipelineConfig c = synthetic_config(tmp.path / "run");
  c.periods = c.schedule;
  CHECK_THROWS_WITH_AS(run_pipeline(c), doctest::Contains("exactly one of"), Error);
  c = synthetic_config(tmp.path / "run");
  c.init_chunks = 5;
  CHECK_THROWS_WITH_AS(run_pipeline(c), doctest::Contains("init-chunks"), Error);
  c = synthetic_config({});
  CHECK_THROWS_WITH_AS(run_pipeline(c), doctest::Contains("no output directory"), Error);
  c = synthetic_config(tmp.path / "run");
  c.corpus.clear();
  CHECK_THROWS_AS(run_pipeline(c), Error);
  CHECK_THROWS_AS(load_manifest_config(tmp.path / "nowhere"), Error);
}

TEST_CASE("ingesting the protocol fixtures") {
  TempDir tmp("ingest");
  const fs::path out = tmp.path / "corpus.jsonl";
  const std::size_t n = ingest_protocols({kFixtures / "protocols"},
                                         fs::path(TOPICDRIFT_SOURCE_DIR) / "data" / "speech_rules.txt",
                                         out, 2);
  CHECK(n == 6);
  const std::string text = textio::read_file(out);
  CHECK(text.find("Der Haushalt bleibt solide finanziert.") != std::string::npos);
  CHECK(text.find("Anlage") == std::string::npos);

  const fs::path again = tmp.path / "again.jsonl";
  ingest_protocols({kFixtures / "protocols"},
                   fs::path(TOPICDRIFT_SOURCE_DIR) / "data" / "speech_rules.txt", again, 1);
  CHECK(textio::read_file(again) == text);
}
