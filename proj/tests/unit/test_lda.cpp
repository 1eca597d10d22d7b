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

#include <cmath>
#include <sstream>

#include "../support/synthetic.hpp"
#include "topicdrift/error.hpp"
#include "topicdrift/lda.hpp"

using namespace topicdrift;
using namespace topicdrift::testing;

namespace {

// Joint probability as a sequential Polya-urn product, token by token.
double urn_log_joint(const LdaState& s, const LdaParams& p) {
  const std::size_t K = s.topics;
  std::vector<double> nkv(s.vocab_size * K, 0.0), nk(K, 0.0);
  double lp = 0.0;
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    std::vector<double> ndk(K, 0.0);
    for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
      const TopicId k = s.assignments[d][i];
      const WordId w = s.docs[d][i];
      lp += std::log((ndk[k] + p.alpha) / (static_cast<double>(i) + K * p.alpha));
      lp += std::log((nkv[w * K + k] + p.eta) / (nk[k] + s.vocab_size * p.eta));
      ndk[k] += 1;
      nkv[w * K + k] += 1;
      nk[k] += 1;
    }
  }
  return lp;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK(LdaParams::symmetric(4).alpha == 0.25);
  LdaParams p = LdaParams::symmetric(3);
  p.eta = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("eta"), Error);
  p = LdaParams::symmetric(0);
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_NOTHROW(LdaParams::symmetric(1).validate());
}

TEST_CASE("init and sweeps keep counts consistent") {
  Rng rng(1);
  auto docs = random_docs(rng, 10, 200, 12);
  const LdaParams p = LdaParams::symmetric(4);
  LdaState s = init_assignments(docs, 12, p, rng);
  CHECK(counts_consistent(s));
  CHECK(s.token_count() == [&] {
    std::size_t n = 0;
    for (const auto& d : docs) n += d.size();
    return n;
  }());
  for (int i = 0; i < 5; ++i) {
    gibbs_sweep(s, p, rng);
    CHECK(counts_consistent(s));
    CHECK(recount(s) == CountTables{s.doc_topic, s.word_topic, s.topic_total});
  }
  s.doc_topic[0] += 1;
  CHECK_FALSE(counts_consistent(s));
}

TEST_CASE("out-of-range word ids are rejected") {
  Rng rng(1);
  CHECK_THROWS_WITH_AS(init_assignments({{0, 5}}, 3, LdaParams::symmetric(2), rng),
                       doctest::Contains("word id 5"), Error);
}

TEST_CASE("K = 1 puts every token in topic 0") {
  Rng rng(2);
  LdaState s = init_assignments({{0, 1, 1}, {2}}, 3, LdaParams::symmetric(1), rng);
  gibbs_sweep(s, LdaParams::symmetric(1), rng);
  for (const auto& z : s.assignments) {
    for (TopicId k : z) CHECK(k == 0u);
  }
}

TEST_CASE("sweep conditional matches the hand formula on a tiny state") {
  // Two docs, K = 2: doc 0 = {w0, w1}, doc 1 = {w0}; topics fixed by hand.
  LdaParams p = LdaParams::symmetric(2);
  p.alpha = 0.5;
  p.eta = 0.1;
  Rng rng(3);
  LdaState s = init_assignments({{0, 1}, {0}}, 2, p, rng);
  s.assignments = {{0, 1}, {0}};
  const CountTables t = recount(s);
  s.doc_topic = t.doc_topic;
  s.word_topic = t.word_topic;
  s.topic_total = t.topic_total;

  bool seen = false;
  SweepObserver obs = [&](const LdaState&, const SamplingStep& step) {
    if (seen) return;
    seen = true;
    // Token (0, 0) = w0 removed from topic 0: ndk = (0, 1), nkv(w0) = (1, 0), nk = (1, 1).
    CHECK(step.weights[0] == doctest::Approx((0 + 0.5) * (1 + 0.1) / (1 + 0.2)));
    CHECK(step.weights[1] == doctest::Approx((1 + 0.5) * (0 + 0.1) / (1 + 0.2)));
  };
  gibbs_sweep(s, p, rng, &obs);
  CHECK(seen);
}

TEST_CASE("log_joint equals the sequential urn product") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const std::size_t K = 1 + uniform_index(rng, 4), V = 1 + uniform_index(rng, 10);
    LdaParams p = LdaParams::symmetric(K);
    p.eta = 0.05 + uniform01(rng);
    LdaState s = init_assignments(random_docs(rng, 6, 60, V), V, p, rng);
    gibbs_sweep(s, p, rng);
    CHECK(log_joint(s, p) == doctest::Approx(urn_log_joint(s, p)).epsilon(1e-10));
  }
}

TEST_CASE("log_joint ignores prior counts") {
  Rng rng(4);
  const LdaParams p = LdaParams::symmetric(2);
  std::vector<EncodedDoc> docs{{0, 1, 2}, {2, 2}};
  LdaState with_prior = init_sequential(docs, 3, {5, 0, 0, 5, 1, 1}, {6, 6}, p, rng);
  LdaState plain = init_assignments(docs, 3, p, rng);
  plain.assignments = with_prior.assignments;
  const CountTables t = recount(plain);
  plain.doc_topic = t.doc_topic;
  plain.word_topic = t.word_topic;
  plain.topic_total = t.topic_total;
  CHECK(log_joint(with_prior, p) == doctest::Approx(log_joint(plain, p)));
  CHECK(counts_consistent(with_prior));
}

TEST_CASE("select_best prefers the first of equal scores") {
  const std::vector<double> scores{-5.0, -2.0, -2.0, -9.0};
  CHECK(select_best(scores) == 1u);
  CHECK_THROWS_AS(select_best(std::vector<double>{}), Error);
}

TEST_CASE("fit is deterministic and independent of the thread count") {
  Rng rng(8);
  const auto docs = random_docs(rng, 20, 400, 15);
  LdaParams p = LdaParams::symmetric(3);
  p.sweeps = 20;
  p.restarts = 4;
  const FitResult a = fit(docs, 15, p);
  p.threads = 4;
  const FitResult b = fit(docs, 15, p);
  CHECK(a.scores == b.scores);
  CHECK(a.chosen == b.chosen);
  CHECK(a.state.assignments == b.state.assignments);
  CHECK(a.chosen == select_best(a.scores));
  CHECK(a.scores[a.chosen] == log_joint(a.state, p));
  p.seed = 9;
  CHECK(fit(docs, 15, p).scores != a.scores);
}

TEST_CASE("estimate_phi smooths counts") {
  const std::vector<std::uint32_t> c{3, 1, 0};
  const auto phi = estimate_phi(c, 0.5);
  CHECK(phi[0] == doctest::Approx(3.5 / 5.5));
  CHECK(phi[2] == doctest::Approx(0.5 / 5.5));
  CHECK(estimate_phi(c, 0.0)[1] == 0.25);
  CHECK_THROWS_AS(estimate_phi(std::vector<std::uint32_t>{0, 0}, 0.0), Error);
  CHECK_THROWS_AS(estimate_phi(std::vector<std::uint32_t>{}, 0.5), Error);
}

TEST_CASE("state checkpoints round-trip exactly") {
  Rng rng(12);
  LdaParams p = LdaParams::symmetric(3);
  p.eta = 0.1 / 3;  // not exactly representable in decimal
  LdaState s = init_sequential(random_docs(rng, 5, 50, 6), 6, std::vector<std::int32_t>(18, 1),
                               std::vector<std::int32_t>(3, 6), p, rng);
  std::stringstream buf;
  write_state(buf, s, p);
  LdaParams q;
  const LdaState back = read_state(buf, &q);
  CHECK(back.assignments == s.assignments);
  CHECK(back.word_topic == s.word_topic);
  CHECK(back.prior_word_topic == s.prior_word_topic);
  CHECK(q.eta == p.eta);
  CHECK(q.alpha == p.alpha);

  std::stringstream bad("topicdrift-lda 2\n");
  CHECK_THROWS_AS(read_state(bad), Error);
}
