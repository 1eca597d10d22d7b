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

#include <filesystem>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "topicdrift/corpus.hpp"
#include "topicdrift/date.hpp"

namespace topicdrift::bundestag {

struct SessionRecord {
  std::string session_id;  // "<period>/<session>", e.g. "1/1"
  Date date;
  std::string body;
};

// Accepts both protocol layouts published by the Bundestag: the flat
// DOKUMENT/DATUM/TEXT files of the older periods and the structured
// dbtplenarprotokoll files. Tables of contents, speaker registers and
// attachments never reach the body.
//
// Throws Error("bundestag", "parse_protocol_xml", ...) with the byte offset
// for malformed XML, and a schema error when no session date can be found
// or the extracted body is empty.
SessionRecord parse_protocol_xml(std::string_view bytes);
SessionRecord load_protocol(const std::filesystem::path& path);

struct SpeechRules {
  std::vector<std::string> sources;
  std::vector<std::regex> headers;
};

// One ECMAScript regex per line; '#' starts a comment line. Each pattern
// is matched against the start of a body line and marks a speaker header.
SpeechRules parse_rules(std::string_view content);
SpeechRules load_rules(const std::filesystem::path& path);

// Removes parenthesized interjections (applause, heckling, procedural
// remarks) including nested ones. An opener without a matching closer is
// dropped together with the rest of its line. Whitespace runs collapse to
// a single space and the result is trimmed.
std::string strip_noncontent(std::string_view text);

struct SpeechSplit {
  std::vector<Document> documents;
  std::vector<std::string> warnings;
};

// A speech runs from one header line to the next; the header match itself
// is not part of the speech and text before the first header is dropped.
// Without any header match the whole body becomes a single document and a
// warning is recorded. Document ids are "<session_id>#<k>", k counted from 1.
SpeechSplit split_speeches(const SessionRecord& session, const SpeechRules& rules,
                           const TokenizerConfig& tokenizer = {});

// Same split, returning the stripped speech texts instead of tokens.
std::vector<std::string> speech_texts(const SessionRecord& session,
                                      const SpeechRules& rules,
                                      std::vector<std::string>* warnings = nullptr);

}  // namespace topicdrift::bundestag
