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
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "topicdrift/date.hpp"

namespace topicdrift {

struct Document {
  std::string id;
  Date date;
  std::vector<std::string> tokens;
};

struct TimeChunk {
  std::size_t index = 0;
  DateRange range;
  std::vector<Document> documents;

  std::size_t token_count() const;
};

struct TokenizerConfig {
  std::size_t min_length = 2;  // in code points
  std::unordered_set<std::string> stopwords;
};

// Lowercases, splits on every non-letter code point (so digits and
// punctuation never survive), then drops short tokens and stopwords.
// Input is UTF-8; invalid bytes act as separators.
std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& config = {});

// One stopword per line; blank lines and lines starting with '#' ignored.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

// A raw corpus record as stored in the line-delimited corpus file.
struct CorpusRecord {
  std::string id;
  Date date;
  std::string text;
};

// Corpus files are JSON Lines: {"id": ..., "date": "YYYY-MM-DD", "text": ...}.
// Blank lines are skipped. Tokenization may run on `threads` workers; the
// output order is always file order.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const TokenizerConfig& config = {},
                                  unsigned threads = 1);
std::vector<Document> parse_corpus(std::string_view content,
                                   const TokenizerConfig& config = {},
                                   unsigned threads = 1);

std::string corpus_line(const CorpusRecord& record);
void write_corpus(const std::filesystem::path& path,
                  const std::vector<CorpusRecord>& records);

// One ISO date per line, strictly increasing.
std::vector<Date> load_schedule(const std::filesystem::path& path);
std::vector<Date> parse_schedule(std::string_view content);

// Splits every period [starts[i], starts[i+1]) into `parts` spans of equal
// length in days (the last boundary is `starts.back()`, the exclusive end of
// the final period).
std::vector<Date> split_periods_by_date(const std::vector<Date>& period_bounds,
                                        std::size_t parts);

// Splits every period into `parts` spans holding (nearly) the same number of
// distinct session dates. Periods with fewer sessions than parts fall back
// to date splitting for that period.
std::vector<Date> split_periods_by_sessions(const std::vector<Date>& period_bounds,
                                            const std::vector<Date>& session_dates,
                                            std::size_t parts);

struct Chunking {
  std::vector<TimeChunk> chunks;
  std::vector<std::string> warnings;  // one entry per empty chunk
};

// Places every document into the chunk whose [boundary_i, boundary_{i+1})
// contains its date. Within a chunk, input order is preserved.
Chunking chunk_by_schedule(std::vector<Document> docs,
                           const std::vector<Date>& boundaries);

}  // namespace topicdrift
