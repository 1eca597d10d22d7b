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

#include "topicdrift/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "topicdrift/bundestag.hpp"
#include "topicdrift/corpus.hpp"
#include "topicdrift/error.hpp"
#include "topicdrift/parallel.hpp"
#include "topicdrift/report.hpp"
#include "topicdrift/simd/kernels.hpp"
#include "topicdrift/textio.hpp"

#ifndef TOPICDRIFT_VERSION
#define TOPICDRIFT_VERSION "0.0.0"
#endif

namespace topicdrift {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("pipeline", op, message);
}

void emit(const LogSink& log, std::string_view message) {
  if (log) log(message);
}

// "auto" keeps whatever is active, so TOPICDRIFT_KERNELS still applies.
void apply_kernels(const PipelineConfig& config) {
  if (config.kernels == "auto") return;
  try {
    simd::select_kernels(simd::parse_kernel_choice(config.kernels));
  } catch (const std::invalid_argument& e) {
    fail("kernels", e.what());
  }
}

std::vector<Date> chunk_bounds(const RollingState& state) {
  std::vector<Date> bounds;
  for (const auto& c : state.chunks) bounds.push_back(c.range.start);
  bounds.push_back(state.chunks.back().range.end);
  return bounds;
}

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail("output", "cannot create '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, std::string_view content) {
    textio::write_file_atomic(dir_ / name, content);
    hashes_.emplace_back(name, textio::fnv1a64_hex(content));
  }

  const std::vector<std::pair<std::string, std::string>>& hashes() const { return hashes_; }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> hashes_;
};

std::string manifest_text(const PipelineConfig& config, const RollingState& state,
                          const DetectionResult& detection, std::string_view command,
                          const OutputDir& out) {
  std::string text = "# topicdrift run manifest\n";
  text += "tool=topicdrift\n";
  text += std::string("version=") + TOPICDRIFT_VERSION + "\n";
  text += "manifest-format=1\n";
  text += "command=" + std::string(command) + "\n";
  for (const auto& [key, value] : config.to_settings()) text += "config." + key + "=" + value + "\n";
  text +=
      "random.fit-restart=mt19937_64(derive_seed(seed, 1, {restart}))\n"
      "random.chunk=mt19937_64(derive_seed(seed, 2, {chunk}))\n"
      "random.replicate=mt19937_64(derive_seed(seed, 3, {topic, chunk, replicate}))\n";
  std::size_t documents = 0;
  for (const auto& c : state.chunks) documents += c.docs.size();
  text += "stats.documents=" + std::to_string(documents) + "\n";
  text += "stats.chunks=" + std::to_string(state.chunks.size()) + "\n";
  text += "stats.vocabulary=" + std::to_string(state.vocab.size()) + "\n";
  text += "stats.init-choice=" + std::to_string(state.init_choice) + "\n";
  text += "stats.changes=" + std::to_string(detection.change_count()) + "\n";
  for (const auto& [name, hash] : out.hashes()) text += "fnv1a64." + name + "=" + hash + "\n";
  return text;
}

PipelineResult write_reports(const PipelineConfig& config, RollingState state,
                             ReportSet which, std::string_view command, OutputDir& out,
                             const LogSink& log) {
  PipelineResult result;
  const DetectorParams detector = config.detector_params();
  emit(log, "detecting changes over " + std::to_string(state.last()) + " chunks");
  result.detection = run_detection(state, detector);
  emit(log, std::to_string(result.detection.change_count()) + " changes detected");

  std::vector<Date> periods =
      config.periods.empty() ? chunk_bounds(state) : load_schedule(config.periods);
  std::vector<Date> doc_dates;
  for (const auto& c : state.chunks) doc_dates.insert(doc_dates.end(), c.doc_dates.begin(), c.doc_dates.end());
  std::vector<Date> change_dates;
  for (const auto& series : result.detection.series) {
    for (const auto& rec : series) {
      if (rec.detected) change_dates.push_back(state.chunks[rec.t].range.start);
    }
  }

  out.write("changes.csv", changes_csv(result.detection, state, true));
  out.write("similarities.csv", changes_csv(result.detection, state, false));
  out.write("impacts.csv", impacts_csv(result.detection, state, config.top_impacts));
  if (which == ReportSet::kAll) {
    out.write("topwords.csv", topwords_csv(state, config.top_words));
    out.write("shares.csv", shares_csv(state));
  }
  out.write("summary.csv", summary_csv(period_summary(doc_dates, change_dates, periods)));
  const std::string manifest = manifest_text(config, state, result.detection, command, out);
  textio::write_file_atomic(out.path() / std::string(kManifestFile), manifest);

  for (const auto& [name, hash] : out.hashes()) result.files.push_back(name);
  result.files.emplace_back(kManifestFile);
  result.state = std::move(state);
  return result;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const LogSink& log) {
  config.validate();
  if (config.corpus.empty()) fail("run", "no corpus given");
  if (config.out.empty()) fail("run", "no output directory given");
  if (config.schedule.empty() == config.periods.empty()) {
    fail("run", "give exactly one of 'schedule' and 'periods'");
  }
  apply_kernels(config);
  emit(log, std::string("kernels: ") + std::string(simd::active_kernels().name));

  TokenizerConfig tokenizer;
  tokenizer.min_length = config.min_length;
  if (!config.stopwords.empty()) tokenizer.stopwords = load_stopwords(config.stopwords);
  std::vector<Document> docs = load_corpus(config.corpus, tokenizer, config.threads);
  emit(log, "loaded " + std::to_string(docs.size()) + " documents");

  std::vector<Date> bounds;
  if (!config.schedule.empty()) {
    bounds = load_schedule(config.schedule);
  } else {
    const std::vector<Date> periods = load_schedule(config.periods);
    if (config.split == SplitMode::kDate) {
      bounds = split_periods_by_date(periods, config.chunks_per_period);
    } else {
      std::vector<Date> dates;
      for (const auto& d : docs) dates.push_back(d.date);
      bounds = split_periods_by_sessions(periods, dates, config.chunks_per_period);
    }
  }
  Chunking chunking = chunk_by_schedule(std::move(docs), bounds);
  PipelineResult result;
  for (const auto& w : chunking.warnings) emit(log, "warning: " + w);
  auto& chunks = chunking.chunks;
  if (chunks.size() < 2) fail("run", "the schedule must define at least two chunks");
  if (chunks.size() < config.init_chunks) {
    fail("run", "schedule has " + std::to_string(chunks.size()) + " chunks but init-chunks is " +
                    std::to_string(config.init_chunks));
  }

  const RollingParams params = config.rolling_params();
  emit(log, "fitting initial model on " + std::to_string(config.init_chunks) + " chunks");
  RollingState state =
      rolling_init(std::span<const TimeChunk>(chunks).first(config.init_chunks), params);
  for (std::size_t t = config.init_chunks; t < chunks.size(); ++t) {
    advance(state, chunks[t], params);
    emit(log, "modeled chunk " + std::to_string(t) + " (vocabulary " +
                  std::to_string(state.vocab.size()) + ")");
  }

  OutputDir out(config.out);
  {
    std::ostringstream checkpoint;
    write_checkpoint(checkpoint, state, params);
    out.write(std::string(kCheckpointFile), checkpoint.str());
  }
  {
    std::string vocab;
    for (const auto& w : state.vocab.words()) vocab += w + "\n";
    out.write("vocab.txt", vocab);
  }
  PipelineResult reports = write_reports(config, std::move(state), ReportSet::kAll, "run", out, log);
  reports.warnings = std::move(chunking.warnings);
  return reports;
}

PipelineResult rerun_reports(const PipelineConfig& config, RollingState state,
                             ReportSet which, std::string_view command, const LogSink& log) {
  config.validate();
  if (config.out.empty()) fail(command, "no output directory given");
  if (state.empty() || state.topics != config.topics) {
    fail(command, "checkpoint does not match the configuration");
  }
  apply_kernels(config);
  OutputDir out(config.out);
  return write_reports(config, std::move(state), which, command, out, log);
}

Settings load_manifest_config(const std::filesystem::path& run_dir) {
  const Settings manifest = parse_settings(textio::read_file(run_dir / std::string(kManifestFile)));
  Settings config;
  for (const auto& [key, value] : manifest) {
    if (key.rfind("config.", 0) == 0 && !value.empty()) config[key.substr(7)] = value;
  }
  if (config.empty()) fail("manifest", "no configuration recorded in " + run_dir.string());
  return config;
}

std::size_t ingest_protocols(const std::vector<std::filesystem::path>& inputs,
                             const std::filesystem::path& rules_path,
                             const std::filesystem::path& output, unsigned threads,
                             const LogSink& log) {
  const bundestag::SpeechRules rules = bundestag::load_rules(rules_path);
  std::vector<std::filesystem::path> files;
  for (const auto& input : inputs) {
    if (std::filesystem::is_directory(input)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(input);
    }
  }

  struct Parsed {
    std::vector<CorpusRecord> records;
    std::vector<std::string> warnings;
  };
  std::vector<Parsed> parsed(files.size());
  parallel_for(files.size(), threads, [&](std::size_t i) {
    const bundestag::SessionRecord session = bundestag::load_protocol(files[i]);
    const auto texts = bundestag::speech_texts(session, rules, &parsed[i].warnings);
    for (std::size_t k = 0; k < texts.size(); ++k) {
      parsed[i].records.push_back({session.session_id + "#" + std::to_string(k + 1), session.date,
                                   texts[k]});
    }
  });

  std::string content;
  std::size_t count = 0;
  for (const auto& p : parsed) {
    for (const auto& w : p.warnings) emit(log, "warning: " + w);
    for (const auto& rec : p.records) {
      content += corpus_line(rec) + "\n";
      ++count;
    }
  }
  textio::write_file_atomic(output, content);
  emit(log, "wrote " + std::to_string(count) + " speeches from " + std::to_string(files.size()) +
                " protocols");
  return count;
}

}  // namespace topicdrift
