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

#include "topicdrift/report.hpp"

#include <algorithm>
#include <numeric>

#include "topicdrift/error.hpp"
#include "topicdrift/textio.hpp"

namespace topicdrift {
namespace {

using textio::csv_row;
using textio::format_double;

std::string optional_real(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

std::string date_range_text(const DateRange& r) {
  return format_iso_date(r.start) + "/" + format_iso_date(r.end);
}

}  // namespace

std::vector<RankedWord> top_words(std::span<const double> weights, const Vocabulary& vocab,
                                  std::size_t n) {
  if (weights.size() > vocab.size()) {
    throw Error("report", "top_words", "weights wider than vocabulary");
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](std::size_t a, std::size_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return vocab.word(static_cast<WordId>(a)) < vocab.word(static_cast<WordId>(b));
  };
  const std::size_t m = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    better);
  std::vector<RankedWord> out;
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back({vocab.word(static_cast<WordId>(order[i])), weights[order[i]]});
  }
  return out;
}

std::vector<RankedWord> top_words(std::span<const std::uint32_t> counts,
                                  const Vocabulary& vocab, std::size_t n) {
  std::vector<double> weights(counts.begin(), counts.end());
  return top_words(std::span<const double>(weights), vocab, n);
}

std::vector<std::optional<std::vector<double>>> topic_shares(const RollingState& state) {
  std::vector<std::optional<std::vector<double>>> shares;
  for (const auto& chunk : state.chunks) {
    std::vector<std::uint64_t> counts(state.topics, 0);
    std::uint64_t total = 0;
    for (const auto& z : chunk.assignments) {
      for (TopicId k : z) {
        ++counts[k];
        ++total;
      }
    }
    if (total == 0) {
      shares.emplace_back(std::nullopt);
      continue;
    }
    std::vector<double> row(state.topics);
    for (std::size_t k = 0; k < state.topics; ++k) {
      row[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    }
    shares.emplace_back(std::move(row));
  }
  return shares;
}

std::vector<PeriodRow> period_summary(std::span<const Date> document_dates,
                                      std::span<const Date> change_dates,
                                      const std::vector<Date>& period_bounds) {
  if (period_bounds.size() < 2) {
    throw Error("report", "period_summary", "need at least two period bounds");
  }
  std::vector<PeriodRow> rows(period_bounds.size() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].period = i + 1;
    rows[i].start = period_bounds[i];
    if (i > 0) rows[i].changes = 0;
  }
  auto locate = [&](const Date& d) -> std::size_t {
    if (d < period_bounds.front() || !(d < period_bounds.back())) {
      throw Error("report", "period_summary",
                  "date " + format_iso_date(d) + " lies outside the period schedule");
    }
    const auto it = std::upper_bound(period_bounds.begin(), period_bounds.end(), d);
    return static_cast<std::size_t>(it - period_bounds.begin()) - 1;
  };
  for (const auto& d : document_dates) ++rows[locate(d)].documents;
  for (const auto& d : change_dates) {
    auto& row = rows[locate(d)];
    if (row.changes) ++*row.changes;
  }
  return rows;
}

std::string change_id(std::size_t topic, std::size_t t) {
  return std::to_string(topic) + "-" + std::to_string(t);
}

std::string changes_csv(const DetectionResult& result, const RollingState& state,
                        bool detected_only) {
  std::string out = csv_row({"topic", "t", "date_range", "observed_similarity", "q", "z",
                             "detected"});
  for (const auto& series : result.series) {
    for (const auto& rec : series) {
      if (detected_only && !rec.detected) continue;
      out += csv_row({std::to_string(rec.topic), std::to_string(rec.t),
                      date_range_text(state.chunks.at(rec.t).range), optional_real(rec.observed),
                      optional_real(rec.threshold), std::to_string(rec.run_length),
                      rec.detected ? "true" : "false"});
    }
  }
  return out;
}

std::string impacts_csv(const DetectionResult& result, const RollingState& state,
                        std::size_t top_m) {
  std::string out =
      csv_row({"change_id", "rank", "word", "impact", "direction", "freq_t", "freq_ref"});
  for (const auto& series : result.series) {
    for (const auto& rec : series) {
      if (!rec.detected) continue;
      const auto impacts = impact_report(rec, state, top_m);
      for (std::size_t r = 0; r < impacts.size(); ++r) {
        const auto& w = impacts[r];
        out += csv_row({change_id(rec.topic, rec.t), std::to_string(r + 1), w.word,
                        format_double(w.impact), std::string(to_string(w.direction)),
                        format_double(w.freq_t), format_double(w.freq_ref)});
      }
    }
  }
  return out;
}

std::string topwords_csv(const RollingState& state, std::size_t n) {
  std::string out = csv_row({"t", "topic", "rank", "word", "count"});
  for (std::size_t t = 0; t < state.chunks.size(); ++t) {
    const CountMatrix counts = topic_counts(state, t);
    for (std::size_t k = 0; k < state.topics; ++k) {
      const auto words = top_words(counts.row(k), state.vocab, n);
      for (std::size_t r = 0; r < words.size(); ++r) {
        if (words[r].weight <= 0.0) break;
        out += csv_row({std::to_string(t), std::to_string(k), std::to_string(r + 1),
                        words[r].word, std::to_string(static_cast<std::uint64_t>(words[r].weight))});
      }
    }
  }
  return out;
}

std::string shares_csv(const RollingState& state) {
  std::string out = csv_row({"t", "date_range", "topic", "share"});
  const auto shares = topic_shares(state);
  for (std::size_t t = 0; t < shares.size(); ++t) {
    for (std::size_t k = 0; k < state.topics; ++k) {
      out += csv_row({std::to_string(t), date_range_text(state.chunks[t].range),
                      std::to_string(k), shares[t] ? format_double((*shares[t])[k]) : "NA"});
    }
  }
  return out;
}

std::string summary_csv(const std::vector<PeriodRow>& rows) {
  std::string out = csv_row({"period", "start_date", "documents", "changes"});
  for (const auto& row : rows) {
    out += csv_row({std::to_string(row.period), format_iso_date(row.start),
                    std::to_string(row.documents),
                    row.changes ? std::to_string(*row.changes) : "NA"});
  }
  return out;
}

}  // namespace topicdrift
