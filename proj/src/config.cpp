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

#include "topicdrift/config.hpp"

#include <cctype>
#include <cmath>

#include "topicdrift/error.hpp"
#include "topicdrift/textio.hpp"

namespace topicdrift {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("config", op, message);
}

std::size_t as_size(const std::string& key, const std::string& value) {
  const auto v = textio::parse_u64(value);
  if (!v) fail("parse", key + ": expected a nonnegative integer, got '" + value + "'");
  return static_cast<std::size_t>(*v);
}

double as_real(const std::string& key, const std::string& value) {
  const auto v = textio::parse_double(value);
  if (!v || !std::isfinite(*v)) fail("parse", key + ": expected a number, got '" + value + "'");
  return *v;
}

}  // namespace

std::string normalize_key(std::string_view key) {
  std::string out;
  for (char c : textio::trim(key)) {
    if (c == '_') c = '-';
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

Settings parse_settings(std::string_view content) {
  Settings settings;
  const auto lines = textio::split(content, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = textio::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("parse", "line " + std::to_string(i + 1) + ": expected key=value");
    }
    const std::string key = normalize_key(line.substr(0, eq));
    if (key.empty()) fail("parse", "line " + std::to_string(i + 1) + ": empty key");
    settings[key] = std::string(textio::trim(line.substr(eq + 1)));
  }
  return settings;
}

Settings load_settings(const std::filesystem::path& path) {
  return parse_settings(textio::read_file(path));
}

double PipelineConfig::resolved_alpha() const {
  return alpha.value_or(1.0 / static_cast<double>(topics));
}

double PipelineConfig::resolved_eta() const {
  return eta.value_or(1.0 / static_cast<double>(topics));
}

RollingParams PipelineConfig::rolling_params() const {
  RollingParams r;
  r.init_chunks = init_chunks;
  r.memory_chunks = memory;
  r.chunk_sweeps = chunk_sweeps;
  r.vocab_threshold = vocab_threshold;
  r.lda.topics = topics;
  r.lda.alpha = resolved_alpha();
  r.lda.eta = resolved_eta();
  r.lda.sweeps = sweeps;
  r.lda.restarts = restarts;
  r.lda.seed = seed;
  r.lda.threads = threads;
  return r;
}

DetectorParams PipelineConfig::detector_params() const {
  DetectorParams d;
  d.p = p;
  d.z_max = z_max;
  d.quantile_level = quantile;
  d.replicates = replicates;
  d.seed = seed;
  d.eta = resolved_eta();
  d.threads = threads;
  return d;
}

void PipelineConfig::validate() const {
  auto bad = [](const std::string& key, const std::string& why) { fail("validate", key + ": " + why); };
  if (topics < 2) bad("k", "need at least 2 topics");
  if (alpha && !(*alpha > 0.0)) bad("alpha", "must be > 0");
  if (eta && !(*eta > 0.0)) bad("eta", "must be > 0");
  if (init_chunks < 1) bad("init-chunks", "must be >= 1");
  if (memory < 1) bad("memory", "must be >= 1");
  if (sweeps < 1) bad("sweeps", "must be >= 1");
  if (restarts < 1) bad("restarts", "must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) bad("p", "must lie in [0, 1]");
  if (z_max < 1) bad("z-max", "must be >= 1");
  if (!(quantile > 0.0 && quantile < 1.0)) bad("quantile", "must lie in (0, 1)");
  if (replicates < 1) bad("replicates", "must be >= 1");
  if (chunks_per_period < 1) bad("chunks-per-period", "must be >= 1");
  if (kernels != "auto" && kernels != "scalar" && kernels != "avx2") {
    bad("kernels", "must be auto, scalar or avx2");
  }
}

PipelineConfig PipelineConfig::from_settings(const Settings& settings) {
  PipelineConfig c;
  for (const auto& [raw_key, value] : settings) {
    const std::string key = normalize_key(raw_key);
    if (key == "corpus") c.corpus = value;
    else if (key == "schedule") c.schedule = value;
    else if (key == "periods") c.periods = value;
    else if (key == "chunks-per-period") c.chunks_per_period = as_size(key, value);
    else if (key == "split") {
      if (value == "date") c.split = SplitMode::kDate;
      else if (value == "sessions") c.split = SplitMode::kSessions;
      else fail("parse", "split: expected 'date' or 'sessions', got '" + value + "'");
    }
    else if (key == "k" || key == "topics") c.topics = as_size(key, value);
    else if (key == "alpha") c.alpha = as_real(key, value);
    else if (key == "eta") c.eta = as_real(key, value);
    else if (key == "init-chunks") c.init_chunks = as_size(key, value);
    else if (key == "memory") c.memory = as_size(key, value);
    else if (key == "sweeps") c.sweeps = as_size(key, value);
    else if (key == "restarts") c.restarts = as_size(key, value);
    else if (key == "chunk-sweeps") c.chunk_sweeps = as_size(key, value);
    else if (key == "p") c.p = as_real(key, value);
    else if (key == "z-max") c.z_max = as_size(key, value);
    else if (key == "quantile") c.quantile = as_real(key, value);
    else if (key == "replicates") c.replicates = as_size(key, value);
    else if (key == "vocab-threshold") c.vocab_threshold = as_size(key, value);
    else if (key == "seed") {
      const auto v = textio::parse_u64(value);
      if (!v) fail("parse", "seed: expected a nonnegative integer, got '" + value + "'");
      c.seed = *v;
    }
    else if (key == "min-length") c.min_length = as_size(key, value);
    else if (key == "stopwords") c.stopwords = value;
    else if (key == "top-words") c.top_words = as_size(key, value);
    else if (key == "top-impacts") c.top_impacts = as_size(key, value);
    else if (key == "out") c.out = value;
    else if (key == "threads") c.threads = static_cast<unsigned>(as_size(key, value));
    else if (key == "kernels") c.kernels = value;
    else fail("parse", "unknown key '" + raw_key + "'");
  }
  return c;
}

Settings PipelineConfig::to_settings() const {
  Settings s;
  s["corpus"] = corpus.generic_string();
  s["schedule"] = schedule.generic_string();
  s["periods"] = periods.generic_string();
  s["chunks-per-period"] = std::to_string(chunks_per_period);
  s["split"] = split == SplitMode::kDate ? "date" : "sessions";
  s["k"] = std::to_string(topics);
  s["alpha"] = textio::format_double(resolved_alpha());
  s["eta"] = textio::format_double(resolved_eta());
  s["init-chunks"] = std::to_string(init_chunks);
  s["memory"] = std::to_string(memory);
  s["sweeps"] = std::to_string(sweeps);
  s["restarts"] = std::to_string(restarts);
  s["chunk-sweeps"] = std::to_string(chunk_sweeps);
  s["p"] = textio::format_double(p);
  s["z-max"] = std::to_string(z_max);
  s["quantile"] = textio::format_double(quantile);
  s["replicates"] = std::to_string(replicates);
  s["vocab-threshold"] = std::to_string(vocab_threshold);
  s["seed"] = std::to_string(seed);
  s["min-length"] = std::to_string(min_length);
  s["stopwords"] = stopwords.generic_string();
  s["top-words"] = std::to_string(top_words);
  s["top-impacts"] = std::to_string(top_impacts);
  return s;
}

}  // namespace topicdrift
