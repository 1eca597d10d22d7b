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

#include "topicdrift/impact.hpp"

#include <algorithm>
#include <cmath>

#include "topicdrift/error.hpp"
#include "topicdrift/simd/kernels.hpp"

namespace topicdrift {

std::string_view to_string(Direction d) {
  return d == Direction::kMoreFrequent ? "more_frequent" : "less_frequent";
}

std::vector<WordImpact> loo_impacts(std::span<const std::uint32_t> current,
                                    std::span<const std::uint32_t> reference,
                                    const Vocabulary& vocab, std::size_t top_m) {
  const std::size_t width = std::max(current.size(), reference.size());
  if (width > vocab.size()) throw Error("impact", "loo_impacts", "vectors wider than vocabulary");
  std::vector<std::uint32_t> cur(width, 0), ref(width, 0);
  std::copy(current.begin(), current.end(), cur.begin());
  std::copy(reference.begin(), reference.end(), ref.begin());

  // Integer dot products are exact, so removing one coordinate is a
  // subtraction rather than a recomputation.
  const simd::CountDots full = simd::active_kernels().count_dots(cur.data(), ref.data(), width);
  if (full.uu == 0 || full.vv == 0) {
    throw Error("impact", "loo_impacts", "both vectors must be nonzero");
  }
  auto cosine_of = [](std::uint64_t uv, std::uint64_t uu, std::uint64_t vv) {
    return std::clamp(static_cast<double>(uv) /
                          (std::sqrt(static_cast<double>(uu)) * std::sqrt(static_cast<double>(vv))),
                      0.0, 1.0);
  };
  const double base = cosine_of(full.uv, full.uu, full.vv);
  std::uint64_t cur_total = 0, ref_total = 0;
  for (std::size_t v = 0; v < width; ++v) {
    cur_total += cur[v];
    ref_total += ref[v];
  }

  std::vector<WordImpact> impacts;
  for (std::size_t v = 0; v < width; ++v) {
    if (cur[v] == 0 && ref[v] == 0) continue;
    const std::uint64_t a = cur[v], b = ref[v];
    const std::uint64_t uu = full.uu - a * a;
    const std::uint64_t vv = full.vv - b * b;
    if (uu == 0 || vv == 0) continue;  // undefined after removal
    WordImpact w;
    w.id = static_cast<WordId>(v);
    w.word = vocab.word(w.id);
    w.impact = cosine_of(full.uv - a * b, uu, vv) - base;
    w.freq_t = static_cast<double>(a) / static_cast<double>(cur_total);
    w.freq_ref = static_cast<double>(b) / static_cast<double>(ref_total);
    w.direction = w.freq_t > w.freq_ref ? Direction::kMoreFrequent : Direction::kLessFrequent;
    impacts.push_back(std::move(w));
  }
  std::sort(impacts.begin(), impacts.end(), [](const WordImpact& x, const WordImpact& y) {
    const double ax = std::abs(x.impact), ay = std::abs(y.impact);
    if (ax != ay) return ax > ay;
    return x.word < y.word;
  });
  if (impacts.size() > top_m) impacts.resize(top_m);
  return impacts;
}

std::vector<WordImpact> impact_report(const DetectionRecord& record, const RollingState& state,
                                      std::size_t top_m) {
  if (!record.detected) {
    throw Error("impact", "impact_report",
                "topic " + std::to_string(record.topic) + " at chunk " +
                    std::to_string(record.t) + " is not a detected change");
  }
  if (record.t > state.last() || record.run_length > record.t || record.topic >= state.topics) {
    throw Error("impact", "impact_report", "record does not fit the rolling state");
  }
  const CountMatrix now = topic_counts(state, record.t);
  std::vector<std::uint32_t> ref(now.cols, 0);
  for (std::size_t s = record.t - record.run_length; s < record.t; ++s) {
    const CountMatrix past = topic_counts(state, s);
    const auto row = past.row(record.topic);
    for (std::size_t v = 0; v < row.size(); ++v) ref[v] += row[v];
  }
  return loo_impacts(now.row(record.topic), ref, state.vocab, top_m);
}

}  // namespace topicdrift
