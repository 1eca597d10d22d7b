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

#include "topicdrift/lda.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "topicdrift/error.hpp"
#include "topicdrift/parallel.hpp"
#include "topicdrift/simd/kernels.hpp"
#include "topicdrift/textio.hpp"

namespace topicdrift {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("lda_core", op, message);
}

void allocate_tables(LdaState& s) {
  s.doc_topic.assign(s.docs.size() * s.topics, 0);
  if (s.has_prior()) {
    s.word_topic = s.prior_word_topic;
    s.topic_total = s.prior_topic_total;
  } else {
    s.word_topic.assign(s.vocab_size * s.topics, 0);
    s.topic_total.assign(s.topics, 0);
  }
  s.assignments.resize(s.docs.size());
  for (std::size_t d = 0; d < s.docs.size(); ++d) s.assignments[d].assign(s.docs[d].size(), 0);
}

void check_word_ids(const std::vector<EncodedDoc>& docs, std::size_t vocab_size,
                    std::string_view op) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (WordId w : docs[d]) {
      if (w >= vocab_size) {
        fail(op, "document " + std::to_string(d) + " has word id " + std::to_string(w) +
                     " >= vocabulary size " + std::to_string(vocab_size));
      }
    }
  }
}

inline void add_token(LdaState& s, std::size_t d, WordId w, TopicId k, std::int32_t delta) {
  s.doc_topic[d * s.topics + k] += delta;
  s.word_topic[static_cast<std::size_t>(w) * s.topics + k] += delta;
  s.topic_total[k] += delta;
}

TopicId draw_topic(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = uniform01(rng) * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cumulative += weights[k];
    if (u < cumulative) return static_cast<TopicId>(k);
  }
  return static_cast<TopicId>(weights.size() - 1);
}

}  // namespace

LdaParams LdaParams::symmetric(std::size_t topics) {
  LdaParams p;
  p.topics = topics;
  p.alpha = 1.0 / static_cast<double>(topics);
  p.eta = p.alpha;
  return p;
}

void LdaParams::validate() const {
  if (topics < 1) fail("validate", "number of topics must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("validate", "alpha must be > 0");
  if (!(eta > 0.0) || !std::isfinite(eta)) fail("validate", "eta must be > 0");
  if (sweeps < 1) fail("validate", "sweeps must be >= 1");
  if (restarts < 1) fail("validate", "restarts must be >= 1");
}

std::size_t LdaState::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : docs) n += doc.size();
  return n;
}

CountTables recount(const LdaState& s) {
  CountTables t;
  t.doc_topic.assign(s.docs.size() * s.topics, 0);
  if (s.has_prior()) {
    t.word_topic = s.prior_word_topic;
    t.topic_total = s.prior_topic_total;
  } else {
    t.word_topic.assign(s.vocab_size * s.topics, 0);
    t.topic_total.assign(s.topics, 0);
  }
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
      const TopicId k = s.assignments[d][i];
      ++t.doc_topic[d * s.topics + k];
      ++t.word_topic[static_cast<std::size_t>(s.docs[d][i]) * s.topics + k];
      ++t.topic_total[k];
    }
  }
  return t;
}

bool counts_consistent(const LdaState& s) {
  if (s.assignments.size() != s.docs.size()) return false;
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    if (s.assignments[d].size() != s.docs[d].size()) return false;
    for (TopicId k : s.assignments[d]) {
      if (k >= s.topics) return false;
    }
  }
  const CountTables t = recount(s);
  return t.doc_topic == s.doc_topic && t.word_topic == s.word_topic &&
         t.topic_total == s.topic_total;
}

LdaState init_assignments(std::vector<EncodedDoc> docs, std::size_t vocab_size,
                          const LdaParams& params, Rng& rng) {
  params.validate();
  check_word_ids(docs, vocab_size, "init_assignments");
  LdaState s;
  s.topics = params.topics;
  s.vocab_size = vocab_size;
  s.docs = std::move(docs);
  allocate_tables(s);
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
      const auto k = static_cast<TopicId>(uniform_index(rng, s.topics));
      s.assignments[d][i] = k;
      add_token(s, d, s.docs[d][i], k, +1);
    }
  }
  return s;
}

void gibbs_sweep(LdaState& s, const LdaParams& params, Rng& rng,
                 const SweepObserver* observer) {
  const auto& kernels = simd::active_kernels();
  const std::size_t K = s.topics;
  const double v_eta = static_cast<double>(s.vocab_size) * params.eta;
  std::vector<double> weights(K);
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    const EncodedDoc& doc = s.docs[d];
    std::vector<TopicId>& z = s.assignments[d];
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const WordId w = doc[i];
      add_token(s, d, w, z[i], -1);
      kernels.topic_weights(&s.doc_topic[d * K], &s.word_topic[static_cast<std::size_t>(w) * K],
                            s.topic_total.data(), K, params.alpha, params.eta, v_eta,
                            weights.data());
      if (observer && *observer) (*observer)(s, SamplingStep{d, i, w, weights});
      z[i] = draw_topic(weights, rng);
      add_token(s, d, w, z[i], +1);
    }
  }
}

LdaState init_sequential(std::vector<EncodedDoc> docs, std::size_t vocab_size,
                         std::vector<std::int32_t> prior_word_topic,
                         std::vector<std::int32_t> prior_topic_total,
                         const LdaParams& params, Rng& rng, const SweepObserver* observer) {
  params.validate();
  check_word_ids(docs, vocab_size, "init_sequential");
  const std::size_t K = params.topics;
  if (prior_word_topic.size() != vocab_size * K || prior_topic_total.size() != K) {
    fail("init_sequential", "prior tables do not match vocabulary size x topics");
  }
  LdaState s;
  s.topics = K;
  s.vocab_size = vocab_size;
  s.docs = std::move(docs);
  s.prior_word_topic = std::move(prior_word_topic);
  s.prior_topic_total = std::move(prior_topic_total);
  allocate_tables(s);

  const auto& kernels = simd::active_kernels();
  const double v_eta = static_cast<double>(vocab_size) * params.eta;
  std::vector<double> weights(K);
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
      const WordId w = s.docs[d][i];
      kernels.topic_weights(&s.doc_topic[d * K], &s.word_topic[static_cast<std::size_t>(w) * K],
                            s.topic_total.data(), K, params.alpha, params.eta, v_eta,
                            weights.data());
      if (observer && *observer) (*observer)(s, SamplingStep{d, i, w, weights});
      const TopicId k = draw_topic(weights, rng);
      s.assignments[d][i] = k;
      add_token(s, d, w, k, +1);
    }
  }
  return s;
}

double log_joint(const LdaState& s, const LdaParams& params) {
  const std::size_t K = s.topics;
  const double V = static_cast<double>(s.vocab_size);
  const double alpha = params.alpha;
  const double eta = params.eta;

  // Own counts only: subtract the prior from the combined tables.
  double topic_part = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    std::int64_t total = 0;
    double words = 0.0;
    for (std::size_t v = 0; v < s.vocab_size; ++v) {
      std::int32_t n = s.word_topic[v * K + k];
      if (s.has_prior()) n -= s.prior_word_topic[v * K + k];
      total += n;
      if (n > 0) words += std::lgamma(n + eta) - std::lgamma(eta);
    }
    topic_part += words + std::lgamma(V * eta) - std::lgamma(static_cast<double>(total) + V * eta);
  }
  double doc_part = 0.0;
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    double topics = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const std::int32_t n = s.doc_topic[d * K + k];
      if (n > 0) topics += std::lgamma(n + alpha) - std::lgamma(alpha);
    }
    const double Kd = static_cast<double>(K);
    doc_part += topics + std::lgamma(Kd * alpha) -
                std::lgamma(static_cast<double>(s.docs[d].size()) + Kd * alpha);
  }
  return topic_part + doc_part;
}

std::size_t select_best(std::span<const double> scores) {
  if (scores.empty()) fail("fit", "no runs to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

LdaState fit_once(const std::vector<EncodedDoc>& docs, std::size_t vocab_size,
                  const LdaParams& params, std::uint64_t run_seed) {
  Rng rng(run_seed);
  LdaState state = init_assignments(docs, vocab_size, params, rng);
  for (std::size_t s = 0; s < params.sweeps; ++s) gibbs_sweep(state, params, rng);
  return state;
}

FitResult fit(const std::vector<EncodedDoc>& docs, std::size_t vocab_size,
              const LdaParams& params) {
  params.validate();
  check_word_ids(docs, vocab_size, "fit");
  std::vector<LdaState> runs(params.restarts);
  parallel_for(params.restarts, params.threads, [&](std::size_t r) {
    runs[r] = fit_once(docs, vocab_size, params,
                       derive_seed(params.seed, StreamTag::kFitRestart, {r}));
  });
  FitResult result;
  // lgamma is not reentrant on every libc; score sequentially.
  for (const auto& run : runs) result.scores.push_back(log_joint(run, params));
  result.chosen = select_best(result.scores);
  result.state = std::move(runs[result.chosen]);
  return result;
}

void estimate_phi(std::span<const std::uint32_t> counts, double eta, std::span<double> out) {
  if (counts.empty()) fail("estimate_phi", "vocabulary size must be >= 1");
  if (out.size() != counts.size()) fail("estimate_phi", "output size mismatch");
  if (eta < 0.0) fail("estimate_phi", "eta must be >= 0");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double denominator =
      static_cast<double>(total) + static_cast<double>(counts.size()) * eta;
  if (!(denominator > 0.0)) fail("estimate_phi", "all-zero counts need eta > 0");
  simd::active_kernels().smooth(counts.data(), counts.size(), eta, denominator, out.data());
}

std::vector<double> estimate_phi(std::span<const std::uint32_t> counts, double eta) {
  std::vector<double> out(counts.size());
  estimate_phi(counts, eta, out);
  return out;
}

// Checkpoint layout:
//   topicdrift-lda 1
//   topics <K> vocab <V> docs <D>
//   alpha <hex> eta <hex> sweeps <n> restarts <n> seed <n>
//   totals <nk_0> ... <nk_{K-1}>
//   prior <entries>            (then one "<v> <k> <count>" line per entry)
//   <len> <w>:<z> ...          (one line per document)
void write_state(std::ostream& out, const LdaState& s, const LdaParams& params) {
  out << "topicdrift-lda 1\n";
  out << "topics " << s.topics << " vocab " << s.vocab_size << " docs " << s.docs.size() << "\n";
  out << "alpha " << textio::format_hex(params.alpha) << " eta " << textio::format_hex(params.eta)
      << " sweeps " << params.sweeps << " restarts " << params.restarts << " seed "
      << params.seed << "\n";
  out << "totals";
  for (auto n : s.topic_total) out << ' ' << n;
  out << "\n";
  std::size_t entries = 0;
  for (auto n : s.prior_word_topic) entries += (n != 0);
  out << "prior " << (s.has_prior() ? "yes " : "no ") << entries << "\n";
  if (s.has_prior()) {
    out << "prior_totals";
    for (auto n : s.prior_topic_total) out << ' ' << n;
    out << "\n";
    for (std::size_t v = 0; v < s.vocab_size; ++v) {
      for (std::size_t k = 0; k < s.topics; ++k) {
        const auto n = s.prior_word_topic[v * s.topics + k];
        if (n != 0) out << v << ' ' << k << ' ' << n << "\n";
      }
    }
  }
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    out << s.docs[d].size();
    for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
      out << ' ' << s.docs[d][i] << ':' << s.assignments[d][i];
    }
    out << "\n";
  }
}

LdaState read_state(std::istream& in, LdaParams* params_out) {
  auto expect = [&](std::string_view word) {
    std::string got;
    if (!(in >> got) || got != word) {
      fail("load_state", "expected '" + std::string(word) + "', found '" + got + "'");
    }
  };
  auto read_u64 = [&] {
    std::string tok;
    in >> tok;
    auto v = textio::parse_u64(tok);
    if (!v) fail("load_state", "expected an unsigned integer, found '" + tok + "'");
    return *v;
  };
  auto read_i64 = [&] {
    std::string tok;
    in >> tok;
    auto v = textio::parse_i64(tok);
    if (!v) fail("load_state", "expected an integer, found '" + tok + "'");
    return *v;
  };
  auto read_real = [&] {
    std::string tok;
    in >> tok;
    auto v = textio::parse_double(tok);
    if (!v) fail("load_state", "expected a number, found '" + tok + "'");
    return *v;
  };

  expect("topicdrift-lda");
  if (read_u64() != 1) fail("load_state", "unsupported checkpoint version");
  LdaParams params;
  LdaState s;
  expect("topics");
  s.topics = read_u64();
  expect("vocab");
  s.vocab_size = read_u64();
  expect("docs");
  const std::size_t n_docs = read_u64();
  expect("alpha");
  params.alpha = read_real();
  expect("eta");
  params.eta = read_real();
  expect("sweeps");
  params.sweeps = read_u64();
  expect("restarts");
  params.restarts = read_u64();
  expect("seed");
  params.seed = read_u64();
  params.topics = s.topics;
  params.validate();

  expect("totals");
  std::vector<std::int32_t> stored_totals(s.topics);
  for (auto& n : stored_totals) n = static_cast<std::int32_t>(read_i64());

  expect("prior");
  std::string has_prior;
  in >> has_prior;
  const std::size_t entries = read_u64();
  if (has_prior == "yes") {
    expect("prior_totals");
    s.prior_topic_total.resize(s.topics);
    for (auto& n : s.prior_topic_total) n = static_cast<std::int32_t>(read_i64());
    s.prior_word_topic.assign(s.vocab_size * s.topics, 0);
    for (std::size_t e = 0; e < entries; ++e) {
      const auto v = read_u64();
      const auto k = read_u64();
      const auto n = read_i64();
      if (v >= s.vocab_size || k >= s.topics) fail("load_state", "prior entry out of range");
      s.prior_word_topic[v * s.topics + k] = static_cast<std::int32_t>(n);
    }
  } else if (has_prior != "no") {
    fail("load_state", "expected 'yes' or 'no' after 'prior'");
  }

  s.docs.resize(n_docs);
  s.assignments.resize(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const std::size_t len = read_u64();
    s.docs[d].resize(len);
    s.assignments[d].resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      std::string tok;
      in >> tok;
      const auto colon = tok.find(':');
      const auto w = colon == std::string::npos ? std::nullopt
                                                : textio::parse_u64(std::string_view(tok).substr(0, colon));
      const auto z = colon == std::string::npos ? std::nullopt
                                                : textio::parse_u64(std::string_view(tok).substr(colon + 1));
      if (!w || !z) fail("load_state", "malformed token '" + tok + "' in document " + std::to_string(d));
      if (*w >= s.vocab_size || *z >= s.topics) {
        fail("load_state", "token '" + tok + "' out of range in document " + std::to_string(d));
      }
      s.docs[d][i] = static_cast<WordId>(*w);
      s.assignments[d][i] = static_cast<TopicId>(*z);
    }
  }
  if (!in) fail("load_state", "truncated checkpoint");

  CountTables t = recount(s);
  if (t.topic_total != stored_totals) {
    fail("load_state", "recounted topic totals do not match the checkpoint");
  }
  s.doc_topic = std::move(t.doc_topic);
  s.word_topic = std::move(t.word_topic);
  s.topic_total = std::move(t.topic_total);
  if (params_out) *params_out = params;
  return s;
}

void save_state(const std::filesystem::path& path, const LdaState& state,
                const LdaParams& params) {
  std::ostringstream out;
  write_state(out, state, params);
  textio::write_file_atomic(path, out.str());
}

LdaState load_state(const std::filesystem::path& path, LdaParams* params) {
  std::istringstream in(textio::read_file(path));
  return read_state(in, params);
}

}  // namespace topicdrift
