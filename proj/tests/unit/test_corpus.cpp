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

#include "topicdrift/corpus.hpp"
#include "topicdrift/error.hpp"

using namespace topicdrift;
using namespace std::chrono;

namespace {
Date ymd(int y, unsigned m, unsigned d) { return Date{year{y} / month{m} / day{d}}; }

Document doc(const std::string& id, Date date) { return {id, date, {"x"}}; }
}  // namespace

TEST_CASE("tokenize lowercases, splits on non-letters and counts code points") {
  CHECK(tokenize("Die ÄRZTE-Kammer, 2021: Öl & Straße!") ==
        std::vector<std::string>{"die", "ärzte", "kammer", "öl", "straße"});
  TokenizerConfig cfg;
  cfg.min_length = 3;
  CHECK(tokenize("äö abc ab", cfg) == std::vector<std::string>{"abc"});
  cfg.min_length = 2;
  CHECK(tokenize("äö", cfg) == std::vector<std::string>{"äö"});
  cfg.stopwords = {"und"};
  CHECK(tokenize("Bund und Länder", cfg) == std::vector<std::string>{"bund", "länder"});
  CHECK(tokenize("ΑΘΗΝΑ Москва") == std::vector<std::string>{"αθηνα", "москва"});
  CHECK(tokenize("").empty());
}

TEST_CASE("parse_corpus reads JSON Lines and reports bad records by line") {
  const auto docs = parse_corpus(
      "{\"id\":\"a\",\"date\":\"2020-01-02\",\"text\":\"Hallo Welt\"}\n\n"
      "{\"id\":\"b\",\"date\":\"2020-02-03\",\"text\":\"Noch ein Text\"}\n");
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "a");
  CHECK(docs[0].date == ymd(2020, 1, 2));
  CHECK(docs[1].tokens == std::vector<std::string>{"noch", "ein", "text"});

  CHECK_THROWS_WITH_AS(parse_corpus("{\"id\":\"a\",\"date\":\"2020-01-02\",\"text\":\"x\"}\n{oops\n"),
                       doctest::Contains("line 2: malformed record"), Error);
  CHECK_THROWS_WITH_AS(parse_corpus("{\"id\":\"q7\",\"date\":\"2020-13-40\",\"text\":\"x\"}\n"),
                       doctest::Contains("line 1 (record 'q7'): unparseable date '2020-13-40'"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_corpus("{\"id\":\"a\",\"text\":\"x\"}\n"),
                       doctest::Contains("missing string field 'date'"), Error);
}

TEST_CASE("corpus_line round-trips through parse_corpus") {
  const CorpusRecord rec{"18/1#2", ymd(2013, 10, 22), "Sie sagte: \"Nein\"\nund ging."};
  const auto docs = parse_corpus(corpus_line(rec) + "\n");
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].id == rec.id);
  CHECK(docs[0].date == rec.date);
  CHECK(docs[0].tokens == tokenize(rec.text));
}

TEST_CASE("parse_schedule accepts comments and rejects non-increasing dates") {
  CHECK(parse_schedule("# bounds\n2020-01-01\n\n2020-07-01\n") ==
        std::vector<Date>{ymd(2020, 1, 1), ymd(2020, 7, 1)});
  CHECK_THROWS_WITH_AS(parse_schedule("2020-07-01\n2020-01-01\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_schedule("2020-01-01\nsoon\n"), doctest::Contains("unparseable date 'soon'"),
                       Error);
}

TEST_CASE("split_periods_by_date gives equal day spans") {
  const auto b = split_periods_by_date({ymd(2021, 1, 1), ymd(2021, 1, 9)}, 4);
  CHECK(b == std::vector<Date>{ymd(2021, 1, 1), ymd(2021, 1, 3), ymd(2021, 1, 5), ymd(2021, 1, 7),
                               ymd(2021, 1, 9)});
  const auto two = split_periods_by_date({ymd(2021, 1, 1), ymd(2021, 1, 11), ymd(2021, 1, 21)}, 2);
  CHECK(two == std::vector<Date>{ymd(2021, 1, 1), ymd(2021, 1, 6), ymd(2021, 1, 11), ymd(2021, 1, 16),
                                 ymd(2021, 1, 21)});
  CHECK_THROWS_AS(split_periods_by_date({ymd(2021, 1, 1), ymd(2021, 1, 3)}, 4), Error);
}

TEST_CASE("split_periods_by_sessions balances sessions and falls back to dates") {
  std::vector<Date> sessions;
  for (unsigned d : {2u, 3u, 4u, 20u, 21u, 22u}) sessions.push_back(ymd(2021, 1, d));
  const auto b = split_periods_by_sessions({ymd(2021, 1, 1), ymd(2021, 2, 1)}, sessions, 2);
  CHECK(b == std::vector<Date>{ymd(2021, 1, 1), ymd(2021, 1, 20), ymd(2021, 2, 1)});
  const auto fallback = split_periods_by_sessions({ymd(2021, 1, 1), ymd(2021, 1, 9)}, {}, 4);
  CHECK(fallback == split_periods_by_date({ymd(2021, 1, 1), ymd(2021, 1, 9)}, 4));
}

TEST_CASE("chunk_by_schedule uses half-open ranges") {
  const std::vector<Date> bounds{ymd(2020, 1, 1), ymd(2020, 2, 1), ymd(2020, 3, 1), ymd(2020, 4, 1)};
  auto c = chunk_by_schedule({doc("a", ymd(2020, 1, 1)), doc("b", ymd(2020, 2, 1)),
                              doc("c", ymd(2020, 1, 31))},
                             bounds);
  REQUIRE(c.chunks.size() == 3);
  CHECK(c.chunks[0].documents.size() == 2);
  CHECK(c.chunks[1].documents.size() == 1);
  CHECK(c.chunks[1].documents[0].id == "b");
  CHECK(c.chunks[2].documents.empty());
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0] == "chunk 2 [2020-03-01, 2020-04-01) is empty");
  CHECK(c.chunks[0].range == DateRange{ymd(2020, 1, 1), ymd(2020, 2, 1)});

  CHECK_THROWS_WITH_AS(chunk_by_schedule({doc("early", ymd(2019, 12, 31)), doc("late", ymd(2020, 4, 1))},
                                         bounds),
                       doctest::Contains("early (2019-12-31), late (2020-04-01)"), Error);
  CHECK_THROWS_AS(chunk_by_schedule({}, {ymd(2020, 1, 1), ymd(2020, 1, 1)}), Error);
}
