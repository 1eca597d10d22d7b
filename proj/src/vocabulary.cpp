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

#include "topicdrift/vocabulary.hpp"

#include <fstream>

#include "topicdrift/error.hpp"

namespace topicdrift {

Vocabulary::Vocabulary(std::vector<std::string> words) {
  for (auto& w : words) {
    if (ids_.contains(w)) throw Error("vocabulary", "load", "duplicate word '" + w + "'");
    add(w);
  }
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  const auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

WordId Vocabulary::add(const std::string& word) {
  const auto [it, inserted] = ids_.try_emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

void Vocabulary::truncate(std::size_t n) {
  while (words_.size() > n) {
    ids_.erase(words_.back());
    words_.pop_back();
  }
}

TokenCounts count_tokens(std::span<const std::vector<std::string>> token_lists) {
  TokenCounts counts;
  for (const auto& tokens : token_lists) {
    for (const auto& t : tokens) ++counts[t];
  }
  return counts;
}

std::vector<std::string> admit_minibatch(Vocabulary& vocab, const TokenCounts& counts,
                                         std::size_t threshold) {
  std::vector<std::string> added;
  for (const auto& [word, count] : counts) {
    if (count > threshold && !vocab.contains(word)) {
      vocab.add(word);
      added.push_back(word);
    }
  }
  return added;
}

std::vector<WordId> encode(std::span<const std::string> tokens, const Vocabulary& vocab) {
  std::vector<WordId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto id = vocab.find(t)) ids.push_back(*id);
  }
  return ids;
}

std::vector<std::string> decode(std::span<const WordId> ids, const Vocabulary& vocab) {
  std::vector<std::string> words;
  words.reserve(ids.size());
  for (WordId id : ids) words.push_back(vocab.word(id));
  return words;
}

void save_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("vocabulary", "save", "cannot open '" + path.string() + "'");
  for (const auto& w : vocab.words()) out << w << '\n';
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("vocabulary", "load", "cannot open '" + path.string() + "'");
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) words.push_back(line);
  return Vocabulary(std::move(words));
}

}  // namespace topicdrift
