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

#include "topicdrift/detect.hpp"
#include "topicdrift/rolling.hpp"
#include "topicdrift/vocabulary.hpp"

namespace topicdrift {

enum class Direction { kMoreFrequent, kLessFrequent };

std::string_view to_string(Direction d);

struct WordImpact {
  std::string word;
  WordId id = 0;
  double impact = 0.0;  // similarity without the word minus similarity with it
  Direction direction = Direction::kLessFrequent;
  double freq_t = 0.0;    // relative frequency in the current chunk
  double freq_ref = 0.0;  // relative frequency in the reference window
};

// Leave-one-out impacts: for every word present in either vector, the word
// is removed from both vectors and the change in cosine similarity is
// recorded. Positive impact means the word pulled the similarity down.
// Words whose removal empties a vector are skipped. The list is ordered by
// |impact| descending, ties by word, and cut to `top_m` entries.
std::vector<WordImpact> loo_impacts(std::span<const std::uint32_t> current,
                                    std::span<const std::uint32_t> reference,
                                    const Vocabulary& vocab, std::size_t top_m);

// Impacts for a detected change: n_{k|t} against the reference window of
// the record's run length. Throws if the record is not a detection.
std::vector<WordImpact> impact_report(const DetectionRecord& record, const RollingState& state,
                                      std::size_t top_m);

}  // namespace topicdrift
