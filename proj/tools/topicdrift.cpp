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

// Command-line front end. Every config key can be set in a key=value file
// (--config) and overridden by a flag of the same name.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "topicdrift/config.hpp"
#include "topicdrift/error.hpp"
#include "topicdrift/pipeline.hpp"
#include "topicdrift/rolling.hpp"

namespace td = topicdrift;

namespace {

struct KeySpec {
  const char* key;
  const char* help;
};

// Flags shared by run, detect and report. `topics` is reachable as --k.
constexpr KeySpec kModelKeys[] = {
    {"corpus", "JSON Lines corpus (id, date, text)"},
    {"schedule", "chunk boundary dates, one ISO date per line"},
    {"periods", "period boundary dates, split into chunks-per-period chunks"},
    {"chunks-per-period", "chunks per period when 'periods' is used"},
    {"split", "period splitting: date or sessions"},
    {"k", "number of topics"},
    {"alpha", "document-topic prior (default 1/k)"},
    {"eta", "topic-word prior (default 1/k)"},
    {"init-chunks", "chunks used for the initial fit"},
    {"memory", "memory window in chunks"},
    {"sweeps", "Gibbs sweeps for the initial fit"},
    {"restarts", "initial fits; the best log joint wins"},
    {"chunk-sweeps", "Gibbs sweeps per new chunk"},
    {"vocab-threshold", "admit words seen more than this often in a chunk"},
    {"seed", "master seed"},
    {"min-length", "minimum token length in characters"},
    {"stopwords", "stopword list, one word per line"},
};

constexpr KeySpec kDetectKeys[] = {
    {"p", "mixture weight of the current chunk"},
    {"z-max", "maximum look-back in chunks"},
    {"quantile", "threshold quantile level"},
    {"replicates", "bootstrap replicates per topic and chunk"},
    {"seed", "master seed"},
    {"top-words", "words per topic in topwords.csv"},
    {"top-impacts", "words per change in impacts.csv"},
};

constexpr KeySpec kExecKeys[] = {
    {"out", "output directory"},
    {"threads", "worker threads (outputs do not depend on it)"},
    {"kernels", "auto, scalar or avx2"},
};

struct Overrides {
  std::map<std::string, std::string> values;

  void bind(CLI::App& app, const KeySpec& spec) {
    if (app.get_option_no_throw("--" + std::string(spec.key)) != nullptr) return;
    app.add_option("--" + std::string(spec.key), values[spec.key], spec.help);
  }

  template <std::size_t N>
  void bind_all(CLI::App& app, const KeySpec (&specs)[N]) {
    for (const auto& s : specs) bind(app, s);
  }

  void apply(const CLI::App& app, td::Settings& settings) const {
    for (const auto& [key, value] : values) {
      if (app.count("--" + key) > 0) settings[key] = value;
    }
  }
};

void log_line(std::string_view message) { std::cerr << "topicdrift: " << message << "\n"; }

// Relative paths inside a config file are relative to that file.
td::Settings base_settings(const std::string& config_path) {
  if (config_path.empty()) return {};
  td::Settings settings = td::load_settings(config_path);
  const std::filesystem::path dir = std::filesystem::path(config_path).parent_path();
  for (const char* key : {"corpus", "schedule", "periods", "stopwords", "out"}) {
    auto it = settings.find(key);
    if (it == settings.end() || it->second.empty()) continue;
    const std::filesystem::path value(it->second);
    if (value.is_relative()) it->second = (dir / value).lexically_normal().generic_string();
  }
  return settings;
}

void print_outputs(const td::PipelineConfig& config, const td::PipelineResult& result) {
  for (const auto& f : result.files) std::cout << (config.out / f).string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming topic model with change detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(TOPICDRIFT_VERSION));

  // ingest
  CLI::App* ingest = app.add_subcommand("ingest", "Bundestag protocol XML to a corpus file");
  std::vector<std::string> ingest_inputs;
  std::string ingest_rules;
  std::string ingest_out;
  unsigned ingest_threads = 1;
  ingest->add_option("inputs", ingest_inputs, "protocol files or directories")->required();
  ingest->add_option("--rules", ingest_rules, "speaker header rules, one regex per line")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--out", ingest_out, "corpus file to write")->required();
  ingest->add_option("--threads", ingest_threads, "worker threads");

  // run
  CLI::App* run = app.add_subcommand("run", "fit, advance, detect and report");
  std::string run_config;
  Overrides run_flags;
  run->add_option("--config", run_config, "key=value configuration file");
  run_flags.bind_all(*run, kModelKeys);
  run_flags.bind_all(*run, kDetectKeys);
  run_flags.bind_all(*run, kExecKeys);

  // detect and report reuse a finished run directory
  CLI::App* detect = app.add_subcommand("detect", "re-run detection on a saved run without refitting");
  CLI::App* report = app.add_subcommand("report", "regenerate all reports from a saved run");
  std::string from_dir;
  std::string rerun_config;
  Overrides detect_flags;
  Overrides report_flags;
  for (auto [sub, flags] : {std::pair{detect, &detect_flags}, std::pair{report, &report_flags}}) {
    sub->add_option("--from", from_dir, "directory of a previous run")->required()->check(CLI::ExistingDirectory);
    sub->add_option("--config", rerun_config, "key=value file applied over the saved configuration");
    flags->bind_all(*sub, kDetectKeys);
    flags->bind_all(*sub, kExecKeys);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      std::vector<std::filesystem::path> inputs(ingest_inputs.begin(), ingest_inputs.end());
      td::ingest_protocols(inputs, ingest_rules, ingest_out, ingest_threads, log_line);
      return EXIT_SUCCESS;
    }
    if (run->parsed()) {
      td::Settings settings = base_settings(run_config);
      run_flags.apply(*run, settings);
      const auto config = td::PipelineConfig::from_settings(settings);
      print_outputs(config, td::run_pipeline(config, log_line));
      return EXIT_SUCCESS;
    }
    const bool is_detect = detect->parsed();
    CLI::App& sub = is_detect ? *detect : *report;
    td::Settings settings = td::load_manifest_config(from_dir);
    for (const auto& [key, value] : base_settings(rerun_config)) settings[key] = value;
    (is_detect ? detect_flags : report_flags).apply(sub, settings);
    if (settings.find("out") == settings.end()) {
      throw td::Error("cli", sub.get_name(), "--out is required");
    }
    const auto config = td::PipelineConfig::from_settings(settings);
    td::RollingState state =
        td::load_checkpoint(std::filesystem::path(from_dir) / std::string(td::kCheckpointFile));
    const auto result = td::rerun_reports(config, std::move(state),
                                          is_detect ? td::ReportSet::kDetection : td::ReportSet::kAll,
                                          sub.get_name(), log_line);
    print_outputs(config, result);
    return EXIT_SUCCESS;
  } catch (const std::exception& e) {
    std::cerr << "topicdrift: error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
}
