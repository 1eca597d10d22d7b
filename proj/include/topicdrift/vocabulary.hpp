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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topicdrift {

using WordId = std::uint32_t;

// Append-only word <-> id mapping. Ids are dense and never reassigned.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(WordId id) const { return words_.at(id); }
  std::optional<WordId> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }

  // Appends `word` if unknown; returns its id either way.
  WordId add(const std::string& word);

  // Keeps only the first `n` words (used to rewind a checkpoint).
  void truncate(std::size_t n);

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

// std::map gives the lexicographic iteration order admission relies on.
using TokenCounts = std::map<std::string, std::size_t>;

TokenCounts count_tokens(std::span<const std::vector<std::string>> token_lists);

// Appends every unknown word whose count is strictly greater than
// `threshold`, in lexicographic order. Returns the newly added words.
std::vector<std::string> admit_minibatch(Vocabulary& vocab, const TokenCounts& counts,
                                         std::size_t threshold);

// Maps tokens to ids, dropping the ones not in the vocabulary.
std::vector<WordId> encode(std::span<const std::string> tokens, const Vocabulary& vocab);
std::vector<std::string> decode(std::span<const WordId> ids, const Vocabulary& vocab);

// One word per line; line number (from 0) is the id.
void save_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary load_vocabulary(const std::filesystem::path& path);

}  // namespace topicdrift
