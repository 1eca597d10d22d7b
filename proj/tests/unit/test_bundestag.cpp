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

#include <doctest.h>

#include <filesystem>

#include "topicdrift/bundestag.hpp"
#include "topicdrift/error.hpp"

using namespace topicdrift;
using namespace topicdrift::bundestag;

namespace {
const std::filesystem::path kData = std::filesystem::path(TOPICDRIFT_SOURCE_DIR) / "data";

SpeechRules simple_rules() { return parse_rules("# speakers\n[A-Z][a-z]+ \\([A-Z]+\\):\n"); }
}  // namespace

TEST_CASE("strip_noncontent removes nested and unterminated remarks") {
  CHECK(strip_noncontent("Wir sind (Beifall (lebhaft)) bereit.") == "Wir sind bereit.");
  CHECK(strip_noncontent("Ende (Zuruf: Unsinn\nNeue Zeile") == "Ende Neue Zeile");
  CHECK(strip_noncontent("  viel \t  Raum \n ") == "viel Raum");
  CHECK(strip_noncontent("Gut (Heiterkeit), sehr gut.") == "Gut, sehr gut.");
  CHECK(strip_noncontent("").empty());
}

TEST_CASE("old-layout XML: date, id, attachments cut") {
  const auto s = parse_protocol_xml(
      "<DOKUMENT><WAHLPERIODE>17</WAHLPERIODE><NR>17/5</NR><DATUM>03.02.2010</DATUM>"
      "<TEXT>Kopf\nMeier (SPD): Guten Tag.\nAnlagen zum Stenografischen Bericht\nListe</TEXT></DOKUMENT>");
  CHECK(s.session_id == "17/5");
  CHECK(format_iso_date(s.date) == "2010-02-03");
  CHECK(s.body == "Kopf\nMeier (SPD): Guten Tag.");
}

TEST_CASE("new-layout XML: attributes, excluded blocks, inline markup") {
  const auto s = parse_protocol_xml(
      "<dbtplenarprotokoll wahlperiode=\"19\" sitzung-nr=\"7\" sitzung-datum=\"01.02.2018\">"
      "<vorspann>Inhalt</vorspann><sitzungsverlauf><rede><p klasse=\"redner\"><redner>Meta</redner>"
      "Meier (SPD):</p><p>Ein <b>fetter</b> Satz.</p></rede></sitzungsverlauf>"
      "<anlagen><p>Anhang</p></anlagen></dbtplenarprotokoll>");
  CHECK(s.session_id == "19/7");
  CHECK(format_iso_date(s.date) == "2018-02-01");
  CHECK(s.body == "Meier (SPD):\nEin fetter Satz.");
}

TEST_CASE("protocol errors name the problem") {
  CHECK_THROWS_WITH_AS(parse_protocol_xml("<DOKUMENT><TEXT>x</TEXT></DOKUMENT>"),
                       doctest::Contains("schema error: missing date element"), Error);
  CHECK_THROWS_WITH_AS(parse_protocol_xml("<DOKUMENT><DATUM>soon</DATUM><TEXT>x</TEXT></DOKUMENT>"),
                       doctest::Contains("unparseable date 'soon'"), Error);
  CHECK_THROWS_WITH_AS(parse_protocol_xml("<a><b></a>"), doctest::Contains("malformed XML at byte 8: mismatched tag"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_protocol_xml("<DOKUMENT><DATUM>01.01.2000</DATUM><TEXT> </TEXT></DOKUMENT>"),
                       doctest::Contains("schema error"), Error);
}

TEST_CASE("speech_texts splits at headers and drops the preamble") {
  SessionRecord s{"1/1", Date{}, "Vorspann\nMeier (SPD): Erstens.\n(Beifall)\nweiter\nKunz (FDP): Zweitens."};
  CHECK(speech_texts(s, simple_rules()) == std::vector<std::string>{"Erstens. weiter", "Zweitens."});

  SessionRecord none{"1/2", Date{}, "Nur Text ohne Sprecher."};
  std::vector<std::string> warnings;
  CHECK(speech_texts(none, simple_rules(), &warnings) == std::vector<std::string>{"Nur Text ohne Sprecher."});
  CHECK(warnings.size() == 1);

  CHECK_THROWS_AS(speech_texts(s, parse_rules("# nothing\n")), Error);
  CHECK_THROWS_AS(parse_rules("([unclosed\n"), Error);
}

TEST_CASE("split_speeches numbers documents per session") {
  SessionRecord s{"18/4", Date{}, "Meier (SPD): Eins zwei.\nKunz (FDP): Drei vier."};
  const auto split = split_speeches(s, simple_rules());
  REQUIRE(split.documents.size() == 2);
  CHECK(split.documents[0].id == "18/4#1");
  CHECK(split.documents[1].id == "18/4#2");
  CHECK(split.documents[1].tokens == std::vector<std::string>{"drei", "vier"});
}

TEST_CASE("bundled rules handle presidents, members and ministers") {
  const auto rules = load_rules(kData / "speech_rules.txt");
  SessionRecord s{"1/1", Date{},
                  "Präsident Dr. Norbert Lammert: A.\nVizepräsidentin Petra Pau: B.\n"
                  "Carsten Schneider (Erfurt) (SPD): C.\nDr. Angela Merkel (CDU/CSU): D.\n"
                  "Peter Altmaier, Bundesminister für Wirtschaft und Energie: E."};
  CHECK(speech_texts(s, rules) == std::vector<std::string>{"A.", "B.", "C.", "D.", "E."});
}

TEST_CASE("fixture files load") {
  const auto old_layout = load_protocol(kData / "fixtures/protocols/18001-old-format.xml");
  CHECK(old_layout.session_id == "18/1");
  CHECK_THROWS_WITH_AS(load_protocol(kData / "fixtures/protocols/does-not-exist.xml"),
                       doctest::Contains("does-not-exist.xml"), Error);
}
