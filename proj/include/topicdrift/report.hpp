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
#include <string>
#include <vector>

#include "topicdrift/date.hpp"
#include "topicdrift/detect.hpp"
#include "topicdrift/impact.hpp"
#include "topicdrift/rolling.hpp"
#include "topicdrift/vocabulary.hpp"

namespace topicdrift {

struct RankedWord {
  std::string word;
  double weight = 0.0;
};

// Highest weights first; equal weights in lexicographic word order.
std::vector<RankedWord> top_words(std::span<const double> weights, const Vocabulary& vocab,
                                  std::size_t n);
std::vector<RankedWord> top_words(std::span<const std::uint32_t> counts,
                                  const Vocabulary& vocab, std::size_t n);

// share[t][k] = tokens of chunk t assigned to k / tokens of chunk t.
// Chunks without tokens have no row (nullopt).
std::vector<std::optional<std::vector<double>>> topic_shares(const RollingState& state);

struct PeriodRow {
  std::size_t period = 1;  // numbered from 1
  Date start;
  std::size_t documents = 0;
  std::optional<std::size_t> changes;  // nullopt for the initialization period
};

// Counts documents and detected changes per period [bounds[i], bounds[i+1]).
// A change belongs to the period containing its chunk's start date. The
// first period is the initialization period and reports no change count.
std::vector<PeriodRow> period_summary(std::span<const Date> document_dates,
                                      std::span<const Date> change_dates,
                                      const std::vector<Date>& period_bounds);

// CSV renderers (header row + CRLF line endings).
std::string changes_csv(const DetectionResult& result, const RollingState& state,
                        bool detected_only);
std::string impacts_csv(const DetectionResult& result, const RollingState& state,
                        std::size_t top_m);
std::string topwords_csv(const RollingState& state, std::size_t n);
std::string shares_csv(const RollingState& state);
std::string summary_csv(const std::vector<PeriodRow>& rows);

// "<topic>-<t>", the key joining impacts.csv to changes.csv.
std::string change_id(std::size_t topic, std::size_t t);

}  // namespace topicdrift
