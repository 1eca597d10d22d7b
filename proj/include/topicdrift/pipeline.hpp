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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "topicdrift/config.hpp"
#include "topicdrift/detect.hpp"
#include "topicdrift/rolling.hpp"

namespace topicdrift {

using LogSink = std::function<void(std::string_view)>;

inline constexpr std::string_view kCheckpointFile = "checkpoint.txt";
inline constexpr std::string_view kManifestFile = "manifest.txt";

struct PipelineResult {
  RollingState state;
  DetectionResult detection;
  std::vector<std::string> warnings;
  std::vector<std::string> files;  // written, relative to the output directory
};

// corpus -> chunks -> initial fit -> advances -> detection -> reports.
// Writes checkpoint.txt, vocab.txt, changes.csv, similarities.csv,
// impacts.csv, topwords.csv, shares.csv, summary.csv and manifest.txt into
// config.out. The configuration is validated before any work starts.
PipelineResult run_pipeline(const PipelineConfig& config, const LogSink& log = {});

enum class ReportSet {
  kDetection,  // changes, similarities, impacts, summary
  kAll,        // the above plus topwords and shares
};

// Re-runs detection (and the requested reports) on a saved rolling state
// without refitting. `command` is recorded in the manifest.
PipelineResult rerun_reports(const PipelineConfig& config, RollingState state,
                             ReportSet which, std::string_view command,
                             const LogSink& log = {});

// Config recorded in a run's manifest.
Settings load_manifest_config(const std::filesystem::path& run_dir);

// Reads every Bundestag protocol XML (files, or *.xml inside directories,
// sorted by name), splits speeches and writes the JSON Lines corpus.
// Returns the number of records written.
std::size_t ingest_protocols(const std::vector<std::filesystem::path>& inputs,
                             const std::filesystem::path& rules_path,
                             const std::filesystem::path& output, unsigned threads,
                             const LogSink& log = {});

}  // namespace topicdrift
