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

#include "topicdrift/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "topicdrift/error.hpp"
#include "topicdrift/parallel.hpp"

namespace topicdrift {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[pos] and advances pos. Malformed
// sequences consume one byte and yield kInvalid.
char32_t next_code_point(std::string_view text, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letters: ASCII, Latin-1, Latin Extended-A/B, combining diacritics, Greek,
// Cyrillic and Latin Extended Additional. Everything else separates tokens.
bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x300 && cp <= 0x36F) return true;
  if (cp >= 0x386 && cp <= 0x3FF) return cp != 0x387;
  if (cp >= 0x400 && cp <= 0x52F) return !(cp >= 0x482 && cp <= 0x489);
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if ((cp >= 0xC0 && cp <= 0xD6) || (cp >= 0xD8 && cp <= 0xDE)) return cp + 0x20;
  if (cp == 0x130) return 'i';
  if (cp == 0x178) return 0xFF;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("corpus", op, message);
}

std::string read_file(const std::filesystem::path& path, std::string_view op) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(op, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::size_t TimeChunk::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.tokens.size();
  return n;
}

std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len >= config.min_length && current_len > 0 &&
        !config.stopwords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
    current_len = 0;
  };
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const char32_t cp = next_code_point(raw_text, pos);
    if (cp != kInvalid && is_letter(cp)) {
      append_utf8(current, to_lower(cp));
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::unordered_set<std::string> words;
  const std::string content = read_file(path, "load_stopwords");
  for (std::string_view line : split_lines(content)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    words.emplace(line);
  }
  return words;
}

std::vector<Document> parse_corpus(std::string_view content,
                                   const TokenizerConfig& config, unsigned threads) {
  const auto lines = split_lines(content);
  std::vector<std::size_t> record_lines;
  std::vector<CorpusRecord> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const std::string where = "line " + std::to_string(i + 1);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      fail("load_corpus", where + ": malformed record (" + e.what() + ")");
    }
    if (!j.is_object()) fail("load_corpus", where + ": record is not an object");
    for (const char* key : {"id", "date", "text"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        fail("load_corpus", where + ": malformed record, missing string field '" +
                                std::string(key) + "'");
      }
    }
    CorpusRecord rec;
    rec.id = j["id"].get<std::string>();
    const std::string date_text = j["date"].get<std::string>();
    const auto date = parse_iso_date(date_text);
    if (!date) {
      fail("load_corpus", where + " (record '" + rec.id + "'): unparseable date '" +
                              date_text + "'");
    }
    rec.date = *date;
    rec.text = j["text"].get<std::string>();
    records.push_back(std::move(rec));
  }

  std::vector<Document> docs(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    docs[i].id = records[i].id;
    docs[i].date = records[i].date;
    docs[i].tokens = tokenize(records[i].text, config);
  });
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const TokenizerConfig& config, unsigned threads) {
  return parse_corpus(read_file(path, "load_corpus"), config, threads);
}

std::string corpus_line(const CorpusRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["date"] = format_iso_date(record.date);
  j["text"] = record.text;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_corpus(const std::filesystem::path& path,
                  const std::vector<CorpusRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("write_corpus", "cannot open '" + path.string() + "'");
  for (const auto& rec : records) out << corpus_line(rec) << '\n';
  if (!out) fail("write_corpus", "write failed for '" + path.string() + "'");
}

std::vector<Date> parse_schedule(std::string_view content) {
  std::vector<Date> bounds;
  const auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto date = parse_iso_date(line);
    if (!date) {
      fail("load_schedule", "line " + std::to_string(i + 1) + ": unparseable date '" +
                                std::string(line) + "'");
    }
    if (!bounds.empty() && !(bounds.back() < *date)) {
      fail("load_schedule", "line " + std::to_string(i + 1) +
                                ": boundaries must be strictly increasing");
    }
    bounds.push_back(*date);
  }
  return bounds;
}

std::vector<Date> load_schedule(const std::filesystem::path& path) {
  return parse_schedule(read_file(path, "load_schedule"));
}

std::vector<Date> split_periods_by_date(const std::vector<Date>& period_bounds,
                                        std::size_t parts) {
  if (period_bounds.size() < 2) fail("split_periods", "need at least two period bounds");
  if (parts == 0) fail("split_periods", "parts must be positive");
  std::vector<Date> out;
  for (std::size_t p = 0; p + 1 < period_bounds.size(); ++p) {
    const auto start = to_days(period_bounds[p]);
    const auto span = (to_days(period_bounds[p + 1]) - start).count();
    if (span < static_cast<long>(parts)) {
      fail("split_periods", "period starting " + format_iso_date(period_bounds[p]) +
                                " is shorter than " + std::to_string(parts) + " days");
    }
    for (std::size_t j = 0; j < parts; ++j) {
      const auto offset = span * static_cast<long>(j) / static_cast<long>(parts);
      out.push_back(from_days(start + std::chrono::days{offset}));
    }
  }
  out.push_back(period_bounds.back());
  return out;
}

std::vector<Date> split_periods_by_sessions(const std::vector<Date>& period_bounds,
                                            const std::vector<Date>& session_dates,
                                            std::size_t parts) {
  if (period_bounds.size() < 2) fail("split_periods", "need at least two period bounds");
  if (parts == 0) fail("split_periods", "parts must be positive");
  std::vector<Date> sessions = session_dates;
  std::sort(sessions.begin(), sessions.end());
  sessions.erase(std::unique(sessions.begin(), sessions.end()), sessions.end());

  std::vector<Date> out;
  for (std::size_t p = 0; p + 1 < period_bounds.size(); ++p) {
    const DateRange period{period_bounds[p], period_bounds[p + 1]};
    std::vector<Date> inside;
    for (const auto& d : sessions) {
      if (period.contains(d)) inside.push_back(d);
    }
    if (inside.size() < parts) {
      auto fallback = split_periods_by_date({period.start, period.end}, parts);
      out.insert(out.end(), fallback.begin(), fallback.end() - 1);
      continue;
    }
    out.push_back(period.start);
    for (std::size_t j = 1; j < parts; ++j) {
      const Date candidate = inside[j * inside.size() / parts];
      if (out.back() < candidate) out.push_back(candidate);
    }
  }
  out.push_back(period_bounds.back());
  return out;
}

Chunking chunk_by_schedule(std::vector<Document> docs,
                           const std::vector<Date>& boundaries) {
  if (boundaries.size() < 2) fail("chunk_by_schedule", "need at least two boundaries");
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i - 1] < boundaries[i])) {
      fail("chunk_by_schedule", "boundaries must be strictly increasing (at " +
                                    format_iso_date(boundaries[i]) + ")");
    }
  }
  std::vector<std::string> outside;
  for (const auto& doc : docs) {
    if (doc.date < boundaries.front() || !(doc.date < boundaries.back())) {
      outside.push_back(doc.id + " (" + format_iso_date(doc.date) + ")");
    }
  }
  if (!outside.empty()) {
    std::string list;
    for (const auto& s : outside) list += (list.empty() ? "" : ", ") + s;
    fail("chunk_by_schedule", "documents outside schedule: " + list);
  }

  Chunking result;
  result.chunks.resize(boundaries.size() - 1);
  for (std::size_t i = 0; i < result.chunks.size(); ++i) {
    result.chunks[i].index = i;
    result.chunks[i].range = {boundaries[i], boundaries[i + 1]};
  }
  for (auto& doc : docs) {
    const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), doc.date);
    const auto idx = static_cast<std::size_t>(it - boundaries.begin()) - 1;
    result.chunks[idx].documents.push_back(std::move(doc));
  }
  for (const auto& chunk : result.chunks) {
    if (chunk.documents.empty()) {
      result.warnings.push_back("chunk " + std::to_string(chunk.index) + " [" +
                                format_iso_date(chunk.range.start) + ", " +
                                format_iso_date(chunk.range.end) + ") is empty");
    }
  }
  return result;
}

}  // namespace topicdrift
