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
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "topicdrift/random.hpp"
#include "topicdrift/vocabulary.hpp"

namespace topicdrift {

using TopicId = std::uint32_t;
using EncodedDoc = std::vector<WordId>;

struct LdaParams {
  std::size_t topics = 30;
  double alpha = 1.0 / 30;  // document-topic prior
  double eta = 1.0 / 30;    // topic-word prior
  std::size_t sweeps = 200;
  std::size_t restarts = 5;  // independent runs in fit(), best one kept
  std::uint64_t seed = 1;
  unsigned threads = 1;  // only parallelizes restarts; never changes results

  // alpha = eta = 1/K.
  static LdaParams symmetric(std::size_t topics);
  void validate() const;
};

// Token assignments of a batch of documents together with the count tables
// of the collapsed sampler.
//
// word_topic is word-major (row v holds the K topic counts of word v) so
// that the per-token conditional reads contiguous memory. word_topic and
// topic_total include the optional prior counts: fixed pseudo-observations
// from assignments that live outside this state and are never resampled.
struct LdaState {
  std::size_t topics = 0;
  std::size_t vocab_size = 0;
  std::vector<EncodedDoc> docs;
  std::vector<std::vector<TopicId>> assignments;
  std::vector<std::int32_t> doc_topic;    // docs x topics
  std::vector<std::int32_t> word_topic;   // vocab_size x topics
  std::vector<std::int32_t> topic_total;  // topics
  std::vector<std::int32_t> prior_word_topic;   // empty, or vocab_size x topics
  std::vector<std::int32_t> prior_topic_total;  // empty, or topics

  std::int32_t ndk(std::size_t d, std::size_t k) const { return doc_topic[d * topics + k]; }
  std::int32_t nkv(std::size_t k, WordId v) const { return word_topic[v * topics + k]; }
  std::int32_t nk(std::size_t k) const { return topic_total[k]; }
  std::size_t token_count() const;
  bool has_prior() const { return !prior_topic_total.empty(); }
};

struct CountTables {
  std::vector<std::int32_t> doc_topic;
  std::vector<std::int32_t> word_topic;
  std::vector<std::int32_t> topic_total;

  friend bool operator==(const CountTables&, const CountTables&) = default;
};

// Tallies the assignments from scratch (plus the prior counts).
CountTables recount(const LdaState& state);
bool counts_consistent(const LdaState& state);

// Every token gets a topic drawn uniformly from [0, K).
LdaState init_assignments(std::vector<EncodedDoc> docs, std::size_t vocab_size,
                          const LdaParams& params, Rng& rng);

struct SamplingStep {
  std::size_t doc;
  std::size_t position;
  WordId word;
  std::span<const double> weights;  // unnormalized conditional, one per topic
};

// Called once per sampled token, after the token has been removed from the
// count tables and before its new topic is drawn.
using SweepObserver = std::function<void(const LdaState&, const SamplingStep&)>;

// Resamples every token once in (document, position) order:
//   P(z = k | rest) ∝ (ndk + alpha) (nkv + eta) / (nk + V eta)
// with the token itself excluded from the counts.
void gibbs_sweep(LdaState& state, const LdaParams& params, Rng& rng,
                 const SweepObserver* observer = nullptr);

// Starts from the given prior counts and assigns the tokens one at a time,
// each drawn from the conditional given the prior plus all tokens assigned
// before it. The prior tables must be vocab_size x K and K long.
LdaState init_sequential(std::vector<EncodedDoc> docs, std::size_t vocab_size,
                         std::vector<std::int32_t> prior_word_topic,
                         std::vector<std::int32_t> prior_topic_total,
                         const LdaParams& params, Rng& rng,
                         const SweepObserver* observer = nullptr);

// Collapsed log joint log p(w, z | alpha, eta) of the state's own tokens.
// Prior counts are ignored.
double log_joint(const LdaState& state, const LdaParams& params);

// Index of the largest score; ties go to the lowest index.
std::size_t select_best(std::span<const double> scores);

struct FitResult {
  LdaState state;
  std::vector<double> scores;  // one per restart
  std::size_t chosen = 0;
};

// Runs `restarts` independent init + sweeps pipelines (restart r seeded by
// derive_seed(seed, kFitRestart, {r})) and keeps the one with the highest
// log_joint.
FitResult fit(const std::vector<EncodedDoc>& docs, std::size_t vocab_size,
              const LdaParams& params);

// The single-restart pipeline fit() repeats.
LdaState fit_once(const std::vector<EncodedDoc>& docs, std::size_t vocab_size,
                  const LdaParams& params, std::uint64_t run_seed);

// Smoothed topic-word estimate: (count[v] + eta) / (total + V eta).
// eta may be 0 when the counts are not all zero.
std::vector<double> estimate_phi(std::span<const std::uint32_t> counts, double eta);
void estimate_phi(std::span<const std::uint32_t> counts, double eta, std::span<double> out);

// Line-based checkpoint: params, vocabulary size, every (word, topic) pair
// and the prior tables. Loading recounts the tables and checks them against
// the stored topic totals.
void write_state(std::ostream& out, const LdaState& state, const LdaParams& params);
LdaState read_state(std::istream& in, LdaParams* params = nullptr);
void save_state(const std::filesystem::path& path, const LdaState& state,
                const LdaParams& params);
LdaState load_state(const std::filesystem::path& path, LdaParams* params = nullptr);

}  // namespace topicdrift
