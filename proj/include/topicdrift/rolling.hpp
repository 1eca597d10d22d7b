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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "topicdrift/corpus.hpp"
#include "topicdrift/lda.hpp"
#include "topicdrift/vocabulary.hpp"

namespace topicdrift {

// Dense K x V matrix of per-topic word counts, topic-major.
struct CountMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  CountMatrix() = default;
  CountMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::span<std::uint32_t> row(std::size_t k) { return {data.data() + k * cols, cols}; }
  std::span<const std::uint32_t> row(std::size_t k) const {
    return {data.data() + k * cols, cols};
  }
  std::uint32_t& at(std::size_t k, std::size_t v) { return data[k * cols + v]; }
  std::uint32_t at(std::size_t k, std::size_t v) const { return data[k * cols + v]; }
  std::uint64_t row_total(std::size_t k) const;

  friend bool operator==(const CountMatrix&, const CountMatrix&) = default;
};

struct RollingParams {
  std::size_t init_chunks = 8;
  std::size_t memory_chunks = 4;
  std::size_t chunk_sweeps = 100;
  std::size_t vocab_threshold = 5;
  LdaParams lda;

  void validate() const;
};

// One modeled minibatch. Its assignments never change after modeling.
struct ModeledChunk {
  std::size_t index = 0;
  DateRange range;
  std::vector<std::string> doc_ids;
  std::vector<Date> doc_dates;
  std::vector<EncodedDoc> docs;  // encoded with the vocabulary of its time
  std::vector<std::vector<TopicId>> assignments;
  std::size_t vocab_size = 0;  // vocabulary size right after this chunk

  std::size_t token_count() const;
  friend bool operator==(const ModeledChunk&, const ModeledChunk&) = default;
};

struct RollingState {
  std::size_t topics = 0;
  Vocabulary vocab;
  std::vector<ModeledChunk> chunks;  // chunks[t].index == t
  std::vector<double> init_scores;   // log joint of every restart of the initial fit
  std::size_t init_choice = 0;

  bool empty() const { return chunks.empty(); }
  // Index of the last modeled chunk.
  std::size_t last() const { return chunks.size() - 1; }
};

// Fits the initial model on `chunks` (all of them, treated as one batch).
// The vocabulary is seeded by admitting the joint token counts of these
// chunks with the threshold rule. Throws if no token survives encoding.
RollingState rolling_init(std::span<const TimeChunk> chunks, const RollingParams& params);

// Models the next chunk:
//  1. admits its new vocabulary (per-chunk counts, threshold rule);
//  2. tallies the assignments of the last `memory_chunks` modeled chunks
//     into fixed prior counts;
//  3. assigns the new tokens sequentially given that prior, then runs
//     `chunk_sweeps` Gibbs sweeps over the new tokens only;
//  4. appends the result as a frozen chunk.
// Randomness: Rng(derive_seed(lda.seed, kChunk, {chunk.index})).
void advance(RollingState& state, const TimeChunk& chunk, const RollingParams& params);

// Prior counts for modeling chunk state.last()+1: the word-major tally of
// the memory window, padded to `vocab_size`.
struct MemoryCounts {
  std::vector<std::int32_t> word_topic;
  std::vector<std::int32_t> topic_total;
};
MemoryCounts memory_counts(const RollingState& state, std::size_t memory_chunks,
                           std::size_t vocab_size);

// n_{k|t}: counts of chunk-t tokens per topic, padded to the current
// vocabulary size.
CountMatrix topic_counts(const RollingState& state, std::size_t t);

// Drops every chunk after t and the words admitted after it.
void truncate(RollingState& state, std::size_t t);

void write_checkpoint(std::ostream& out, const RollingState& state,
                      const RollingParams& params);
RollingState read_checkpoint(std::istream& in, RollingParams* params = nullptr);
void save_checkpoint(const std::filesystem::path& path, const RollingState& state,
                     const RollingParams& params);
RollingState load_checkpoint(const std::filesystem::path& path,
                             RollingParams* params = nullptr);

}  // namespace topicdrift
