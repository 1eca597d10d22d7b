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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "topicdrift/detect.hpp"
#include "topicdrift/rolling.hpp"

namespace topicdrift {

// Raw key=value settings. Keys are normalized to lowercase with '-' as the
// word separator, so "z_max", "Z-MAX" and "z-max" are the same key.
using Settings = std::map<std::string, std::string>;

std::string normalize_key(std::string_view key);

// Flat "key = value" lines; '#' starts a comment line.
Settings parse_settings(std::string_view content);
Settings load_settings(const std::filesystem::path& path);

enum class SplitMode { kDate, kSessions };

struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path schedule;  // explicit chunk boundaries, or
  std::filesystem::path periods;   // period bounds split into chunks_per_period
  std::size_t chunks_per_period = 8;
  SplitMode split = SplitMode::kDate;

  std::size_t topics = 30;
  std::optional<double> alpha;  // default 1/K
  std::optional<double> eta;    // default 1/K
  std::size_t init_chunks = 8;
  std::size_t memory = 4;
  std::size_t sweeps = 200;
  std::size_t restarts = 5;
  std::size_t chunk_sweeps = 100;
  double p = 0.94;
  std::size_t z_max = 4;
  double quantile = 0.01;
  std::size_t replicates = 500;
  std::size_t vocab_threshold = 5;
  std::uint64_t seed = 1;

  std::size_t min_length = 2;
  std::filesystem::path stopwords;
  std::size_t top_words = 10;
  std::size_t top_impacts = 20;

  // Execution only; never affects outputs and is kept out of the manifest.
  std::filesystem::path out;
  unsigned threads = 1;
  std::string kernels = "auto";

  double resolved_alpha() const;
  double resolved_eta() const;
  RollingParams rolling_params() const;
  DetectorParams detector_params() const;

  // Throws Error("config", "validate", ...) naming the offending key.
  void validate() const;

  // Unknown keys are rejected.
  static PipelineConfig from_settings(const Settings& settings);

  // Every output-relevant key, in a fixed order, as normalized key -> text.
  Settings to_settings() const;
};

}  // namespace topicdrift
