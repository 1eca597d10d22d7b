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
#include <optional>
#include <span>
#include <vector>

#include "topicdrift/rolling.hpp"

namespace topicdrift {

struct DetectorParams {
  double p = 0.94;               // weight of the current chunk in the null mixture
  std::size_t z_max = 4;         // longest reference window, in chunks
  double quantile_level = 0.01;  // lower quantile of the resampled similarities
  std::size_t replicates = 500;
  std::uint64_t seed = 1;
  double eta = 1.0 / 30;  // smoothing of the topic-word estimates
  unsigned threads = 1;   // topics in parallel; never changes results

  void validate() const;
};

// Outcome of testing topic k at chunk t.
//
// observed and threshold are empty when either count vector is all zero
// (dormant topic); such records are never flagged.
struct DetectionRecord {
  std::size_t topic = 0;
  std::size_t t = 0;
  std::optional<double> observed;
  std::optional<double> threshold;
  std::size_t run_length = 1;  // z used for this test
  bool detected = false;
  std::uint64_t tokens = 0;            // N_t, tokens of topic k in chunk t
  std::uint64_t reference_tokens = 0;  // tokens in the reference window

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

// Cosine similarity of two count vectors; the shorter one is zero padded.
// Throws Error("detect", "cosine", ...) if either vector is all zero.
double cosine(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v);

// Sum of history[t - z] .. history[t - 1], padded to `width` (or to the
// longest of those vectors when width is 0).
std::vector<std::uint32_t> reference_counts(
    const std::vector<std::vector<std::uint32_t>>& history, std::size_t t, std::size_t z,
    std::size_t width = 0);

// (1 - p) * phi_ref + p * phi_t.
std::vector<double> mixture_phi(std::span<const double> phi_ref, std::span<const double> phi_t,
                                double p);

// For r = 0 .. replicates-1 draws a Multinomial(tokens, phi_tilde) vector
// from the substream derive_seed(seed, kReplicate, {topic, t, r}) and
// returns its cosine with `reference`.
std::vector<double> resample_similarities(std::span<const double> phi_tilde,
                                          std::uint64_t tokens,
                                          std::span<const std::uint32_t> reference,
                                          std::size_t replicates, std::uint64_t seed,
                                          std::size_t topic, std::size_t t);

// The ceil(level * R)-th smallest value (lower order statistic).
double threshold(std::span<const double> similarities, double level);

inline std::size_t next_run_length(bool detected, std::size_t z, std::size_t z_max) {
  return detected ? 1 : std::min(z + 1, z_max);
}

struct StepResult {
  DetectionRecord record;
  std::size_t next_run_length = 1;
};

// Tests one topic at one chunk given its current count vector and the
// summed reference window. `run_length` is the window length that produced
// `reference`.
StepResult detect_counts(std::size_t topic, std::size_t t,
                         std::span<const std::uint32_t> current,
                         std::span<const std::uint32_t> reference, std::size_t run_length,
                         const DetectorParams& params);

// history[s] = n_{k|s} for s = 0 .. t (any lengths; padded to the longest).
// The run length is capped at t.
StepResult detect_step(std::size_t topic, std::size_t t,
                       const std::vector<std::vector<std::uint32_t>>& history,
                       std::size_t run_length, const DetectorParams& params);

struct DetectionResult {
  std::vector<std::vector<DetectionRecord>> series;  // [topic][t - 1]
  std::vector<std::vector<std::size_t>> changes;      // C_k

  std::size_t change_count() const;
};

// Runs detect_step for t = 1 .. T on every topic, starting each topic at
// run length 1.
DetectionResult run_detection(const RollingState& state, const DetectorParams& params);

}  // namespace topicdrift
