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

#include "topicdrift/rolling.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "topicdrift/error.hpp"
#include "topicdrift/textio.hpp"

namespace topicdrift {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("rolling", op, message);
}

std::vector<std::vector<std::string>> token_lists(const TimeChunk& chunk) {
  std::vector<std::vector<std::string>> lists;
  lists.reserve(chunk.documents.size());
  for (const auto& doc : chunk.documents) lists.push_back(doc.tokens);
  return lists;
}

ModeledChunk describe(const TimeChunk& chunk, const Vocabulary& vocab) {
  ModeledChunk m;
  m.index = chunk.index;
  m.range = chunk.range;
  for (const auto& doc : chunk.documents) {
    m.doc_ids.push_back(doc.id);
    m.doc_dates.push_back(doc.date);
    m.docs.push_back(encode(doc.tokens, vocab));
  }
  m.vocab_size = vocab.size();
  return m;
}

// Whitespace and '%' are escaped so ids survive the token-based format.
std::string escape_id(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : id) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7F || c == '%') {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    } else {
      out += c;
    }
  }
  return out.empty() ? "%" : out;
}

std::string unescape_id(std::string_view text) {
  if (text == "%") return {};
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    unsigned value = 0;
    for (std::size_t j = i + 1; j <= i + 2; ++j) {
      const char c = j < text.size() ? text[j] : '\0';
      unsigned digit = 0;
      if (c >= '0' && c <= '9') {
        digit = static_cast<unsigned>(c - '0');
      } else if (c >= 'A' && c <= 'F') {
        digit = static_cast<unsigned>(c - 'A' + 10);
      } else {
        fail("load_checkpoint", "bad escape in document id '" + std::string(text) + "'");
      }
      value = value * 16 + digit;
    }
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

}  // namespace

std::uint64_t CountMatrix::row_total(std::size_t k) const {
  std::uint64_t total = 0;
  for (auto c : row(k)) total += c;
  return total;
}

void RollingParams::validate() const {
  lda.validate();
  if (init_chunks < 1) fail("validate", "init_chunks must be >= 1");
  if (memory_chunks < 1) fail("validate", "memory_chunks must be >= 1");
}

std::size_t ModeledChunk::token_count() const {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n;
}

RollingState rolling_init(std::span<const TimeChunk> chunks, const RollingParams& params) {
  params.validate();
  if (chunks.empty()) fail("init", "no initialization chunks");
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (chunks[i].index != i) fail("init", "initialization chunks must be numbered from 0");
  }

  RollingState state;
  state.topics = params.lda.topics;
  std::vector<std::vector<std::string>> all_tokens;
  for (const auto& chunk : chunks) {
    for (const auto& doc : chunk.documents) all_tokens.push_back(doc.tokens);
  }
  admit_minibatch(state.vocab, count_tokens(all_tokens), params.vocab_threshold);

  std::vector<EncodedDoc> batch;
  for (const auto& chunk : chunks) {
    state.chunks.push_back(describe(chunk, state.vocab));
    for (const auto& doc : state.chunks.back().docs) batch.push_back(doc);
  }
  std::size_t tokens = 0;
  for (const auto& doc : batch) tokens += doc.size();
  if (tokens == 0) fail("init", "initialization corpus is empty after vocabulary admission");

  FitResult result = fit(batch, state.vocab.size(), params.lda);
  state.init_scores = result.scores;
  state.init_choice = result.chosen;
  std::size_t d = 0;
  for (auto& chunk : state.chunks) {
    for (std::size_t i = 0; i < chunk.docs.size(); ++i, ++d) {
      chunk.assignments.push_back(std::move(result.state.assignments[d]));
    }
  }
  return state;
}

MemoryCounts memory_counts(const RollingState& state, std::size_t memory_chunks,
                           std::size_t vocab_size) {
  const std::size_t K = state.topics;
  MemoryCounts mem;
  mem.word_topic.assign(vocab_size * K, 0);
  mem.topic_total.assign(K, 0);
  if (state.empty()) return mem;
  const std::size_t last = state.last();
  const std::size_t first = last + 1 >= memory_chunks ? last + 1 - memory_chunks : 0;
  for (std::size_t t = first; t <= last; ++t) {
    const ModeledChunk& chunk = state.chunks[t];
    for (std::size_t d = 0; d < chunk.docs.size(); ++d) {
      for (std::size_t i = 0; i < chunk.docs[d].size(); ++i) {
        const TopicId k = chunk.assignments[d][i];
        ++mem.word_topic[static_cast<std::size_t>(chunk.docs[d][i]) * K + k];
        ++mem.topic_total[k];
      }
    }
  }
  return mem;
}

void advance(RollingState& state, const TimeChunk& chunk, const RollingParams& params) {
  params.validate();
  if (state.empty()) fail("advance", "state has no initial model");
  if (params.lda.topics != state.topics) fail("advance", "topic count differs from the state");
  if (chunk.index != state.last() + 1) {
    fail("advance", "expected chunk " + std::to_string(state.last() + 1) + ", got chunk " +
                        std::to_string(chunk.index));
  }

  admit_minibatch(state.vocab, count_tokens(token_lists(chunk)), params.vocab_threshold);
  ModeledChunk modeled = describe(chunk, state.vocab);
  MemoryCounts mem = memory_counts(state, params.memory_chunks, state.vocab.size());

  Rng rng(derive_seed(params.lda.seed, StreamTag::kChunk, {chunk.index}));
  LdaState lda = init_sequential(modeled.docs, state.vocab.size(), std::move(mem.word_topic),
                                 std::move(mem.topic_total), params.lda, rng);
  for (std::size_t s = 0; s < params.chunk_sweeps; ++s) gibbs_sweep(lda, params.lda, rng);
  modeled.assignments = std::move(lda.assignments);
  state.chunks.push_back(std::move(modeled));
}

CountMatrix topic_counts(const RollingState& state, std::size_t t) {
  if (state.empty() || t > state.last()) {
    fail("topic_counts", "chunk " + std::to_string(t) + " has not been modeled");
  }
  CountMatrix m(state.topics, state.vocab.size());
  const ModeledChunk& chunk = state.chunks[t];
  for (std::size_t d = 0; d < chunk.docs.size(); ++d) {
    for (std::size_t i = 0; i < chunk.docs[d].size(); ++i) {
      ++m.at(chunk.assignments[d][i], chunk.docs[d][i]);
    }
  }
  return m;
}

void truncate(RollingState& state, std::size_t t) {
  if (state.empty() || t > state.last()) fail("truncate", "chunk " + std::to_string(t) + " out of range");
  state.chunks.resize(t + 1);
  state.vocab.truncate(state.chunks.back().vocab_size);
}

// Layout:
//   topicdrift-rolling 1
//   params init <n> memory <n> chunk_sweeps <n> threshold <n>
//   lda topics <K> alpha <hex> eta <hex> sweeps <n> restarts <n> seed <n>
//   init_scores <n> <hex>... choice <i>
//   vocab <V>            (then V lines, one word each)
//   chunks <T+1>
//   chunk <index> <start> <end> <vocab_size> <docs>
//   doc <id> <date> <len> <w>:<z> ...
void write_checkpoint(std::ostream& out, const RollingState& state,
                      const RollingParams& params) {
  out << "topicdrift-rolling 1\n";
  out << "params init " << params.init_chunks << " memory " << params.memory_chunks
      << " chunk_sweeps " << params.chunk_sweeps << " threshold " << params.vocab_threshold
      << "\n";
  out << "lda topics " << params.lda.topics << " alpha " << textio::format_hex(params.lda.alpha)
      << " eta " << textio::format_hex(params.lda.eta) << " sweeps " << params.lda.sweeps
      << " restarts " << params.lda.restarts << " seed " << params.lda.seed << "\n";
  out << "init_scores " << state.init_scores.size();
  for (double s : state.init_scores) out << ' ' << textio::format_hex(s);
  out << " choice " << state.init_choice << "\n";
  out << "vocab " << state.vocab.size() << "\n";
  for (const auto& w : state.vocab.words()) out << w << "\n";
  out << "chunks " << state.chunks.size() << "\n";
  for (const auto& c : state.chunks) {
    out << "chunk " << c.index << ' ' << format_iso_date(c.range.start) << ' '
        << format_iso_date(c.range.end) << ' ' << c.vocab_size << ' ' << c.docs.size() << "\n";
    for (std::size_t d = 0; d < c.docs.size(); ++d) {
      out << "doc " << escape_id(c.doc_ids[d]) << ' ' << format_iso_date(c.doc_dates[d]) << ' '
          << c.docs[d].size();
      for (std::size_t i = 0; i < c.docs[d].size(); ++i) {
        out << ' ' << c.docs[d][i] << ':' << c.assignments[d][i];
      }
      out << "\n";
    }
  }
}

RollingState read_checkpoint(std::istream& in, RollingParams* params_out) {
  std::string tok;
  auto next = [&]() -> std::string {
    if (!(in >> tok)) fail("load_checkpoint", "truncated checkpoint");
    return tok;
  };
  auto expect = [&](std::string_view word) {
    if (next() != word) {
      fail("load_checkpoint", "expected '" + std::string(word) + "', found '" + tok + "'");
    }
  };
  auto read_u64 = [&] {
    auto v = textio::parse_u64(next());
    if (!v) fail("load_checkpoint", "expected an unsigned integer, found '" + tok + "'");
    return *v;
  };
  auto read_real = [&] {
    auto v = textio::parse_double(next());
    if (!v) fail("load_checkpoint", "expected a number, found '" + tok + "'");
    return *v;
  };
  auto read_date = [&] {
    auto d = parse_iso_date(next());
    if (!d) fail("load_checkpoint", "expected a date, found '" + tok + "'");
    return *d;
  };

  expect("topicdrift-rolling");
  if (read_u64() != 1) fail("load_checkpoint", "unsupported checkpoint version");
  RollingParams params;
  expect("params");
  expect("init");
  params.init_chunks = read_u64();
  expect("memory");
  params.memory_chunks = read_u64();
  expect("chunk_sweeps");
  params.chunk_sweeps = read_u64();
  expect("threshold");
  params.vocab_threshold = read_u64();
  expect("lda");
  expect("topics");
  params.lda.topics = read_u64();
  expect("alpha");
  params.lda.alpha = read_real();
  expect("eta");
  params.lda.eta = read_real();
  expect("sweeps");
  params.lda.sweeps = read_u64();
  expect("restarts");
  params.lda.restarts = read_u64();
  expect("seed");
  params.lda.seed = read_u64();
  params.validate();

  RollingState state;
  state.topics = params.lda.topics;
  expect("init_scores");
  const std::size_t n_scores = read_u64();
  for (std::size_t i = 0; i < n_scores; ++i) state.init_scores.push_back(read_real());
  expect("choice");
  state.init_choice = read_u64();

  expect("vocab");
  const std::size_t V = read_u64();
  std::vector<std::string> words;
  words.reserve(V);
  for (std::size_t i = 0; i < V; ++i) words.push_back(next());
  state.vocab = Vocabulary(std::move(words));

  expect("chunks");
  const std::size_t n_chunks = read_u64();
  std::size_t previous_vocab = 0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    ModeledChunk chunk;
    expect("chunk");
    chunk.index = read_u64();
    if (chunk.index != c) fail("load_checkpoint", "chunk indices must be consecutive from 0");
    chunk.range.start = read_date();
    chunk.range.end = read_date();
    chunk.vocab_size = read_u64();
    if (chunk.vocab_size > V || chunk.vocab_size < previous_vocab) {
      fail("load_checkpoint", "chunk " + std::to_string(c) + " has an invalid vocabulary size");
    }
    previous_vocab = chunk.vocab_size;
    const std::size_t n_docs = read_u64();
    for (std::size_t d = 0; d < n_docs; ++d) {
      expect("doc");
      chunk.doc_ids.push_back(unescape_id(next()));
      chunk.doc_dates.push_back(read_date());
      const std::size_t len = read_u64();
      EncodedDoc doc(len);
      std::vector<TopicId> z(len);
      for (std::size_t i = 0; i < len; ++i) {
        const std::string pair = next();
        const auto colon = pair.find(':');
        const auto w = colon == std::string::npos
                           ? std::nullopt
                           : textio::parse_u64(std::string_view(pair).substr(0, colon));
        const auto k = colon == std::string::npos
                           ? std::nullopt
                           : textio::parse_u64(std::string_view(pair).substr(colon + 1));
        if (!w || !k || *w >= chunk.vocab_size || *k >= state.topics) {
          fail("load_checkpoint", "invalid token '" + pair + "' in chunk " + std::to_string(c));
        }
        doc[i] = static_cast<WordId>(*w);
        z[i] = static_cast<TopicId>(*k);
      }
      chunk.docs.push_back(std::move(doc));
      chunk.assignments.push_back(std::move(z));
    }
    state.chunks.push_back(std::move(chunk));
  }
  if (!state.chunks.empty() && state.chunks.back().vocab_size != V) {
    fail("load_checkpoint", "vocabulary size does not match the last chunk");
  }
  if (params_out) *params_out = params;
  return state;
}

void save_checkpoint(const std::filesystem::path& path, const RollingState& state,
                     const RollingParams& params) {
  std::ostringstream out;
  write_checkpoint(out, state, params);
  textio::write_file_atomic(path, out.str());
}

RollingState load_checkpoint(const std::filesystem::path& path, RollingParams* params) {
  std::istringstream in(textio::read_file(path));
  return read_checkpoint(in, params);
}

}  // namespace topicdrift
