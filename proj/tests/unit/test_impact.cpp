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

#include "../support/synthetic.hpp"
#include "topicdrift/error.hpp"
#include "topicdrift/impact.hpp"

using namespace topicdrift;
using namespace topicdrift::testing;

using Counts = std::vector<std::uint32_t>;

TEST_CASE("a word only in the current chunk lowers the similarity") {
  const Vocabulary vocab({"a", "b"});
  const auto impacts = loo_impacts(Counts{10, 1}, Counts{10, 0}, vocab, 5);
  // Removing "a" would empty the reference vector, so only "b" is scored.
  REQUIRE(impacts.size() == 1);
  CHECK(impacts[0].word == "b");
  CHECK(impacts[0].impact == doctest::Approx(1.0 - 100.0 / (std::sqrt(101.0) * 10.0)));
  CHECK(impacts[0].impact == doctest::Approx(0.004963).epsilon(1e-4));
  CHECK(impacts[0].direction == Direction::kMoreFrequent);
  CHECK(impacts[0].freq_t == doctest::Approx(1.0 / 11));
  CHECK(impacts[0].freq_ref == 0.0);
}

TEST_CASE("equal vectors have no impacts") {
  const Vocabulary vocab({"a", "b", "c"});
  for (const auto& w : loo_impacts(Counts{3, 4, 5}, Counts{3, 4, 5}, vocab, 10)) {
    CHECK(w.impact == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(loo_impacts(Counts{3, 4, 5}, Counts{1, 2, 3}, vocab, 0).empty());
}

TEST_CASE("impacts match a recomputed cosine and are ordered by magnitude") {
  Rng rng(11);
  std::uniform_int_distribution<std::uint32_t> count(0, 20);
  std::vector<std::string> words;
  for (int i = 0; i < 12; ++i) words.push_back("w" + std::to_string(i));
  const Vocabulary vocab(words);
  Counts cur(12), ref(12);
  for (auto& c : cur) c = count(rng);
  for (auto& c : ref) c = count(rng);
  cur[0] = ref[0] = 7;  // keep both vectors nonzero after any single removal
  cur[1] = ref[1] = 9;

  auto cos = [](const Counts& u, const Counts& v) {
    double uv = 0, uu = 0, vv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      uv += double(u[i]) * v[i];
      uu += double(u[i]) * u[i];
      vv += double(v[i]) * v[i];
    }
    return uv / std::sqrt(uu * vv);
  };
  const double base = cos(cur, ref);
  const auto impacts = loo_impacts(cur, ref, vocab, 100);
  for (std::size_t i = 0; i < impacts.size(); ++i) {
    Counts u = cur, v = ref;
    u[impacts[i].id] = v[impacts[i].id] = 0;
    CHECK(impacts[i].impact == doctest::Approx(cos(u, v) - base).epsilon(1e-12));
    CHECK(impacts[i].direction == (impacts[i].freq_t > impacts[i].freq_ref
                                       ? Direction::kMoreFrequent
                                       : Direction::kLessFrequent));
    if (i > 0) CHECK(std::abs(impacts[i - 1].impact) >= std::abs(impacts[i].impact));
  }
  CHECK(loo_impacts(cur, ref, vocab, 3).size() == 3);
}

TEST_CASE("impact input errors") {
  const Vocabulary vocab({"a"});
  CHECK_THROWS_AS(loo_impacts(Counts{1, 2}, Counts{1, 2}, vocab, 3), Error);
  CHECK_THROWS_AS(loo_impacts(Counts{0}, Counts{1}, vocab, 3), Error);
}

TEST_CASE("impact_report requires a detected change") {
  Rng rng(5);
  const auto stream = single_topic_stream(rng, 3, 2, 10, 20, [](std::size_t k, std::size_t) {
    return uniform_words("x" + std::to_string(k), 4);
  });
  RollingParams rp;
  rp.init_chunks = 1;
  rp.chunk_sweeps = 5;
  rp.lda = LdaParams::symmetric(2);
  rp.lda.sweeps = 10;
  rp.lda.restarts = 1;
  const RollingState state = run_stream(stream, rp);

  DetectionRecord rec;
  rec.topic = 0;
  rec.t = 2;
  rec.run_length = 2;
  CHECK_THROWS_WITH_AS(impact_report(rec, state, 5), doctest::Contains("not a detected change"),
                       Error);
  rec.detected = true;
  const auto impacts = impact_report(rec, state, 5);
  CHECK(impacts.size() <= 5);
  rec.run_length = 3;
  CHECK_THROWS_AS(impact_report(rec, state, 5), Error);
  rec.run_length = 1;
  rec.t = 3;
  CHECK_THROWS_AS(impact_report(rec, state, 5), Error);
}
