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

#include "topicdrift/bundestag.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>

#include "topicdrift/error.hpp"

namespace topicdrift::bundestag {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("bundestag", op, message);
}

struct Node {
  std::string name;  // lowercased; empty for text nodes
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;
  std::vector<Node> children;

  bool is_text() const { return name.empty(); }

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct TreeBuilder {
  Node root;  // synthetic document node
  std::vector<Node*> stack{&root};

  static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<TreeBuilder*>(data);
    Node node;
    node.name = lowercase_ascii(name);
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      node.attributes.emplace_back(lowercase_ascii(attrs[i]), attrs[i + 1]);
    }
    Node* parent = self->stack.back();
    parent->children.push_back(std::move(node));
    self->stack.push_back(&parent->children.back());
  }

  static void on_end(void* data, const XML_Char*) {
    static_cast<TreeBuilder*>(data)->stack.pop_back();
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    Node* parent = self->stack.back();
    if (!parent->children.empty() && parent->children.back().is_text()) {
      parent->children.back().text.append(s, static_cast<std::size_t>(len));
      return;
    }
    Node text;
    text.text.assign(s, static_cast<std::size_t>(len));
    parent->children.push_back(std::move(text));
  }
};

Node parse_tree(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  if (!parser) fail("parse_protocol_xml", "cannot create XML parser");
  TreeBuilder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    const auto offset = XML_GetCurrentByteIndex(parser.get());
    fail("parse_protocol_xml",
         "malformed XML at byte " + std::to_string(offset) + ": " +
             XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  return std::move(builder.root);
}

const Node* find_element(const Node& node, std::string_view name) {
  for (const auto& child : node.children) {
    if (child.is_text()) continue;
    if (child.name == name) return &child;
    if (const Node* hit = find_element(child, name)) return hit;
  }
  return nullptr;
}

const Node* document_element(const Node& root) {
  for (const auto& child : root.children) {
    if (!child.is_text()) return &child;
  }
  return nullptr;
}

// Registers, tables of contents, attachments and speaker metadata.
bool is_excluded(std::string_view name) {
  static constexpr std::string_view kExcluded[] = {
      "anlagen",     "anlage",   "anlagen-text", "rednerliste", "inhaltsverzeichnis",
      "register",    "sachregister", "vorspann", "kopfdaten",   "redner",
      "ivz-block",   "ivz-eintrag"};
  return std::find(std::begin(kExcluded), std::end(kExcluded), name) != std::end(kExcluded);
}

bool is_inline(std::string_view name) {
  static constexpr std::string_view kInline[] = {"sup", "sub", "b",      "i",
                                                 "em",  "strong", "span", "a"};
  return std::find(std::begin(kInline), std::end(kInline), name) != std::end(kInline);
}

void flatten(const Node& node, std::string& out) {
  for (const auto& child : node.children) {
    if (child.is_text()) {
      out += child.text;
    } else if (!is_excluded(child.name)) {
      const bool block = !is_inline(child.name);
      if (block) out += '\n';
      flatten(child, out);
      if (block) out += '\n';
    }
  }
}

std::string trim_copy(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Trims every line and drops blank ones.
std::string tidy_lines(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim_copy(text.substr(start, end - start));
    if (!line.empty()) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    start = end + 1;
  }
  return out;
}

// Older protocols carry their attachments as a trailing text section.
std::string cut_attachments(const std::string& text) {
  static const std::regex kHeading(
      R"((^|\n)[ \t]*Anlagen? zum [Ss]teno(graphischen|grafischen) Bericht)");
  std::smatch m;
  if (std::regex_search(text, m, kHeading)) {
    return text.substr(0, static_cast<std::size_t>(m.position(0)));
  }
  return text;
}

std::optional<Date> parse_any_date(std::string_view text) {
  const std::string t = trim_copy(text);
  if (auto d = parse_german_date(t)) return d;
  return parse_iso_date(t);
}

std::string text_of(const Node& node) {
  std::string out;
  flatten(node, out);
  return trim_copy(out);
}

Date extract_date(const Node& doc) {
  std::string raw;
  if (const auto* attr = doc.attribute("sitzung-datum")) {
    raw = *attr;
  } else if (const Node* datum = find_element(doc, "datum")) {
    if (const auto* attr = datum->attribute("date")) {
      raw = *attr;
    } else {
      raw = text_of(*datum);
    }
  } else {
    fail("parse_protocol_xml", "schema error: missing date element");
  }
  const auto date = parse_any_date(raw);
  if (!date) fail("parse_protocol_xml", "schema error: unparseable date '" + raw + "'");
  return *date;
}

std::string extract_session_id(const Node& doc) {
  const auto* period_attr = doc.attribute("wahlperiode");
  const auto* session_attr = doc.attribute("sitzung-nr");
  if (period_attr && session_attr) return *period_attr + "/" + *session_attr;

  std::string period;
  if (period_attr) {
    period = *period_attr;
  } else if (const Node* wp = find_element(doc, "wahlperiode")) {
    period = text_of(*wp);
  }
  if (const Node* nr = find_element(doc, "nr")) {
    const std::string number = text_of(*nr);
    if (number.find('/') != std::string::npos || period.empty()) return number;
    return period + "/" + number;
  }
  if (session_attr) return (period.empty() ? "?" : period) + "/" + *session_attr;
  return period.empty() ? "unknown" : period + "/?";
}

}  // namespace

SessionRecord parse_protocol_xml(std::string_view bytes) {
  const Node root = parse_tree(bytes);
  const Node* doc = document_element(root);
  if (doc == nullptr) fail("parse_protocol_xml", "schema error: no document element");

  SessionRecord record;
  record.date = extract_date(*doc);
  record.session_id = extract_session_id(*doc);

  std::string body;
  if (const Node* text = find_element(*doc, "text")) {
    flatten(*text, body);
    body = cut_attachments(body);
  } else if (const Node* flow = find_element(*doc, "sitzungsverlauf")) {
    flatten(*flow, body);
  } else {
    flatten(*doc, body);
  }
  record.body = tidy_lines(body);
  if (record.body.empty()) {
    fail("parse_protocol_xml", "schema error: session " + record.session_id +
                                   " has no plenary text");
  }
  return record;
}

SessionRecord load_protocol(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("load_protocol", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_protocol_xml(buffer.str());
  } catch (const Error& e) {
    fail("load_protocol", path.filename().string() + ": " + e.what());
  }
}

SpeechRules parse_rules(std::string_view content) {
  SpeechRules rules;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string line(content.substr(start, end - start));
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim_copy(line).empty() || trim_copy(line).front() == '#') continue;
    try {
      rules.headers.emplace_back(line, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      fail("load_rules", "line " + std::to_string(line_no) + ": invalid regex (" +
                             e.what() + ")");
    }
    rules.sources.push_back(line);
  }
  return rules;
}

SpeechRules load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("load_rules", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rules(buffer.str());
}

std::string strip_noncontent(std::string_view text) {
  std::string kept;
  kept.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(') {
      kept += text[i++];
      continue;
    }
    std::size_t depth = 0;
    std::size_t j = i;
    for (; j < text.size(); ++j) {
      if (text[j] == '(') {
        ++depth;
      } else if (text[j] == ')' && --depth == 0) {
        break;
      }
    }
    if (j < text.size()) {
      i = j + 1;
      kept += ' ';
    } else {
      const auto eol = text.find('\n', i);
      i = (eol == std::string_view::npos) ? text.size() : eol;
    }
  }

  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char c : kept) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    // A removed remark must not leave "word ." behind.
    const bool closing = c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
    if (pending_space && !closing) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::vector<std::string> speech_texts(const SessionRecord& session,
                                      const SpeechRules& rules,
                                      std::vector<std::string>* warnings) {
  if (rules.headers.empty()) {
    fail("split_speeches", "ruleset contains no speaker-header pattern");
  }
  std::vector<std::string> raw;
  bool in_speech = false;
  std::size_t start = 0;
  const std::string& body = session.body;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    const std::string line = body.substr(start, end - start);
    start = end + 1;

    bool header = false;
    for (const auto& re : rules.headers) {
      std::smatch m;
      if (std::regex_search(line, m, re, std::regex_constants::match_continuous) &&
          m.length(0) > 0) {
        raw.push_back(line.substr(static_cast<std::size_t>(m.length(0))));
        header = true;
        in_speech = true;
        break;
      }
    }
    if (!header && in_speech) raw.back() += "\n" + line;
  }

  if (raw.empty()) {
    if (warnings) {
      warnings->push_back("session " + session.session_id +
                          ": no speaker header matched, body kept as one document");
    }
    raw.push_back(body);
  }
  std::vector<std::string> texts;
  texts.reserve(raw.size());
  for (const auto& speech : raw) texts.push_back(strip_noncontent(speech));
  return texts;
}

SpeechSplit split_speeches(const SessionRecord& session, const SpeechRules& rules,
                           const TokenizerConfig& tokenizer) {
  SpeechSplit split;
  const auto texts = speech_texts(session, rules, &split.warnings);
  for (std::size_t k = 0; k < texts.size(); ++k) {
    Document doc;
    doc.id = session.session_id + "#" + std::to_string(k + 1);
    doc.date = session.date;
    doc.tokens = tokenize(texts[k], tokenizer);
    split.documents.push_back(std::move(doc));
  }
  return split;
}

}  // namespace topicdrift::bundestag
