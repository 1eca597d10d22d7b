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

// Synthetic corpora and streams shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "topicdrift/corpus.hpp"
#include "topicdrift/lda.hpp"
#include "topicdrift/random.hpp"
#include "topicdrift/rolling.hpp"

namespace topicdrift::testing {

// Random integer-coded documents: up to `max_docs` docs and `max_tokens`
// tokens in total, every word id below `vocab_size`.
inline std::vector<EncodedDoc> random_docs(Rng& rng, std::size_t max_docs, std::size_t max_tokens,
                                           std::size_t vocab_size) {
  const std::size_t n_docs = 1 + uniform_index(rng, max_docs);
  const std::size_t budget = 1 + uniform_index(rng, max_tokens);
  std::vector<EncodedDoc> docs(n_docs);
  for (std::size_t i = 0; i < budget; ++i) {
    docs[uniform_index(rng, n_docs)].push_back(static_cast<WordId>(uniform_index(rng, vocab_size)));
  }
  return docs;
}

// Weighted word list. Weights need not be normalized.
using WordDist = std::vector<std::pair<std::string, double>>;

inline WordDist uniform_words(const std::string& prefix, std::size_t count) {
  WordDist dist;
  for (std::size_t i = 0; i < count; ++i) {
    dist.emplace_back(prefix + static_cast<char>('a' + i / 26) + static_cast<char>('a' + i % 26), 1.0);
  }
  return dist;
}

inline std::string draw_word(Rng& rng, const WordDist& dist) {
  double total = 0.0;
  for (const auto& [w, p] : dist) total += p;
  double u = uniform01(rng) * total;
  for (const auto& [w, p] : dist) {
    if (u < p) return w;
    u -= p;
  }
  return dist.back().first;
}

inline Date chunk_start(std::size_t t) {
  using namespace std::chrono;
  return Date{year{2000} / January / 1} + months{static_cast<int>(t)};
}

// Chunk t holds `docs_per_chunk` single-topic documents, cycling through the
// topics. `topic_words(k, t)` gives the word distribution of topic k at t.
template <typename TopicWords>
std::vector<TimeChunk> single_topic_stream(Rng& rng, std::size_t chunks, std::size_t topics,
                                           std::size_t docs_per_chunk, std::size_t doc_length,
                                           TopicWords&& topic_words) {
  std::vector<TimeChunk> stream;
  for (std::size_t t = 0; t < chunks; ++t) {
    TimeChunk chunk;
    chunk.index = t;
    chunk.range = {chunk_start(t), chunk_start(t + 1)};
    for (std::size_t d = 0; d < docs_per_chunk; ++d) {
      const std::size_t k = d % topics;
      const WordDist dist = topic_words(k, t);
      Document doc;
      doc.id = "t" + std::to_string(t) + "-d" + std::to_string(d);
      doc.date = chunk.range.start;
      for (std::size_t i = 0; i < doc_length; ++i) doc.tokens.push_back(draw_word(rng, dist));
      chunk.documents.push_back(std::move(doc));
    }
    stream.push_back(std::move(chunk));
  }
  return stream;
}

inline RollingState run_stream(std::span<const TimeChunk> stream, const RollingParams& params) {
  RollingState state = rolling_init(stream.first(params.init_chunks), params);
  for (std::size_t t = params.init_chunks; t < stream.size(); ++t) advance(state, stream[t], params);
  return state;
}

// From-scratch collapsed conditional for token (d, i), built directly from
// the assignments. Tokens flagged in `active` are counted; the token itself
// never is.
inline std::vector<double> naive_conditional(const LdaState& s, const LdaParams& params,
                                             std::size_t d, std::size_t i,
                                             const std::vector<std::vector<bool>>& active) {
  const std::size_t K = s.topics;
  std::vector<double> ndk(K, 0.0), nkv(K, 0.0), nk(K, 0.0);
  const WordId w = s.docs[d][i];
  for (std::size_t dd = 0; dd < s.docs.size(); ++dd) {
    for (std::size_t j = 0; j < s.docs[dd].size(); ++j) {
      if ((dd == d && j == i) || !active[dd][j]) continue;
      const TopicId k = s.assignments[dd][j];
      nk[k] += 1;
      if (dd == d) ndk[k] += 1;
      if (s.docs[dd][j] == w) nkv[k] += 1;
    }
  }
  if (s.has_prior()) {
    for (std::size_t k = 0; k < K; ++k) {
      nkv[k] += s.prior_word_topic[static_cast<std::size_t>(w) * K + k];
      nk[k] += s.prior_topic_total[k];
    }
  }
  const double v_eta = static_cast<double>(s.vocab_size) * params.eta;
  std::vector<double> out(K);
  for (std::size_t k = 0; k < K; ++k) {
    out[k] = (ndk[k] + params.alpha) * (nkv[k] + params.eta) / (nk[k] + v_eta);
  }
  return out;
}

// Total-variation distance between two distributions on the same support.
inline double total_variation(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / 2.0;
}

// Greedy matching: repeatedly pair the closest (row, generator) pair.
// Returns the largest matched distance.
inline double greedy_match_max_tv(const std::vector<std::vector<double>>& estimated,
                                  const std::vector<std::vector<double>>& truth) {
  std::vector<bool> used_e(estimated.size()), used_t(truth.size());
  double worst = 0.0;
  for (std::size_t round = 0; round < truth.size(); ++round) {
    double best = 2.0;
    std::size_t be = 0, bt = 0;
    for (std::size_t e = 0; e < estimated.size(); ++e) {
      if (used_e[e]) continue;
      for (std::size_t t = 0; t < truth.size(); ++t) {
        if (used_t[t]) continue;
        const double tv = total_variation(estimated[e], truth[t]);
        if (tv < best) best = tv, be = e, bt = t;
      }
    }
    used_e[be] = used_t[bt] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// Symmetric Dirichlet(concentration) draw of the given dimension.
inline std::vector<double> dirichlet(Rng& rng, std::size_t dim, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> x(dim);
  double sum = 0.0;
  do {
    sum = 0.0;
    for (auto& v : x) sum += (v = gamma(rng));
  } while (sum <= 0.0);
  for (auto& v : x) v /= sum;
  return x;
}

}  // namespace topicdrift::testing
