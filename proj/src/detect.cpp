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

#include "topicdrift/detect.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "topicdrift/error.hpp"
#include "topicdrift/lda.hpp"
#include "topicdrift/parallel.hpp"
#include "topicdrift/random.hpp"
#include "topicdrift/simd/kernels.hpp"

namespace topicdrift {
namespace {

[[noreturn]] void fail(std::string_view op, const std::string& message) {
  throw Error("detect", op, message);
}

bool all_zero(std::span<const std::uint32_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t c) { return c == 0; });
}

std::uint64_t total(std::span<const std::uint32_t> v) {
  std::uint64_t n = 0;
  for (auto c : v) n += c;
  return n;
}

// Walker/Vose alias table for O(1) categorical draws.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> probabilities) {
    const std::size_t n = probabilities.size();
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    double sum = 0.0;
    for (double p : probabilities) sum += p;
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = probabilities[i] * static_cast<double>(n) / sum;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (auto i : large) prob_[i] = 1.0;
    for (auto i : small) prob_[i] = 1.0;  // rounding leftovers
  }

  std::uint32_t draw(Rng& rng) const {
    const auto i = static_cast<std::uint32_t>(uniform_index(rng, prob_.size()));
    return uniform01(rng) < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

constexpr std::uint64_t kBinomialTokensPerWord = 8;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double cosine_from(const simd::CountDots& d) {
  return clamp_unit(static_cast<double>(d.uv) /
                    (std::sqrt(static_cast<double>(d.uu)) * std::sqrt(static_cast<double>(d.vv))));
}

}  // namespace

void DetectorParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) fail("validate", "p must lie in [0, 1]");
  if (z_max < 1) fail("validate", "z_max must be >= 1");
  if (!(quantile_level > 0.0 && quantile_level < 1.0)) {
    fail("validate", "quantile level must lie in (0, 1)");
  }
  if (replicates < 1) fail("validate", "replicates must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) fail("validate", "eta must be > 0");
}

std::size_t DetectionResult::change_count() const {
  std::size_t n = 0;
  for (const auto& c : changes) n += c.size();
  return n;
}

double cosine(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v) {
  const std::size_t common = std::min(u.size(), v.size());
  simd::CountDots d = simd::active_kernels().count_dots(u.data(), v.data(), common);
  for (std::size_t i = common; i < u.size(); ++i) d.uu += std::uint64_t{u[i]} * u[i];
  for (std::size_t i = common; i < v.size(); ++i) d.vv += std::uint64_t{v[i]} * v[i];
  if (d.uu == 0 || d.vv == 0) fail("cosine", "similarity undefined for an all-zero vector");
  return cosine_from(d);
}

std::vector<std::uint32_t> reference_counts(
    const std::vector<std::vector<std::uint32_t>>& history, std::size_t t, std::size_t z,
    std::size_t width) {
  if (z < 1) fail("reference_counts", "run length must be >= 1");
  if (z > t) {
    fail("reference_counts", "run length " + std::to_string(z) + " exceeds chunk index " +
                                 std::to_string(t));
  }
  if (t > history.size()) fail("reference_counts", "history is shorter than t");
  if (width == 0) {
    for (std::size_t s = t - z; s < t; ++s) width = std::max(width, history[s].size());
  }
  std::vector<std::uint32_t> ref(width, 0);
  for (std::size_t s = t - z; s < t; ++s) {
    if (history[s].size() > width) fail("reference_counts", "history row wider than width");
    for (std::size_t v = 0; v < history[s].size(); ++v) ref[v] += history[s][v];
  }
  return ref;
}

std::vector<double> mixture_phi(std::span<const double> phi_ref, std::span<const double> phi_t,
                                double p) {
  if (phi_ref.size() != phi_t.size()) {
    fail("mixture_phi", "length mismatch (" + std::to_string(phi_ref.size()) + " vs " +
                            std::to_string(phi_t.size()) + ")");
  }
  if (!(p >= 0.0 && p <= 1.0)) fail("mixture_phi", "p must lie in [0, 1]");
  std::vector<double> out(phi_ref.size());
  simd::active_kernels().mix(phi_ref.data(), phi_t.data(), out.size(), p, out.data());
  return out;
}

std::vector<double> resample_similarities(std::span<const double> phi_tilde,
                                          std::uint64_t tokens,
                                          std::span<const std::uint32_t> reference,
                                          std::size_t replicates, std::uint64_t seed,
                                          std::size_t topic, std::size_t t) {
  if (tokens < 1) fail("resample_similarities", "token count must be >= 1");
  if (phi_tilde.empty()) fail("resample_similarities", "empty probability vector");
  if (all_zero(reference)) fail("resample_similarities", "reference vector is all zero");
  const AliasTable table(phi_tilde);
  const auto& kernels = simd::active_kernels();
  const std::size_t width = std::max(phi_tilde.size(), reference.size());
  std::vector<std::uint32_t> ref(width, 0);
  std::copy(reference.begin(), reference.end(), ref.begin());

  // Per-token alias draws cost O(N); conditional binomials cost roughly
  // O(support). Both are exact, and the choice depends only on N and the
  // support, so results stay deterministic.
  const auto support = static_cast<std::uint64_t>(
      std::count_if(phi_tilde.begin(), phi_tilde.end(), [](double x) { return x > 0.0; }));
  const bool by_binomials = tokens >= kBinomialTokensPerWord * support;

  std::vector<double> sims(replicates);
  std::vector<std::uint32_t> draw(width);
  for (std::size_t r = 0; r < replicates; ++r) {
    Rng rng(derive_seed(seed, StreamTag::kReplicate, {topic, t, r}));
    if (by_binomials) {
      multinomial_variate(rng, tokens, phi_tilde, draw);
    } else {
      std::fill(draw.begin(), draw.end(), 0);
      for (std::uint64_t n = 0; n < tokens; ++n) ++draw[table.draw(rng)];
    }
    sims[r] = cosine_from(kernels.count_dots(draw.data(), ref.data(), width));
  }
  return sims;
}

double threshold(std::span<const double> similarities, double level) {
  if (similarities.empty()) fail("threshold", "no similarities");
  if (!(level > 0.0 && level < 1.0)) fail("threshold", "level must lie in (0, 1)");
  const double n = static_cast<double>(similarities.size());
  // Shave a relative epsilon so products like 0.01 * 500 land on 5.
  auto rank = static_cast<std::size_t>(std::ceil(level * n * (1.0 - 1e-12)));
  rank = std::clamp<std::size_t>(rank, 1, similarities.size());
  std::vector<double> sorted(similarities.begin(), similarities.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  return clamp_unit(sorted[rank - 1]);
}

StepResult detect_counts(std::size_t topic, std::size_t t,
                         std::span<const std::uint32_t> current,
                         std::span<const std::uint32_t> reference, std::size_t run_length,
                         const DetectorParams& params) {
  StepResult out;
  DetectionRecord& rec = out.record;
  rec.topic = topic;
  rec.t = t;
  rec.run_length = run_length;
  rec.tokens = total(current);
  rec.reference_tokens = total(reference);

  if (rec.tokens > 0 && rec.reference_tokens > 0) {
    const std::size_t width = std::max(current.size(), reference.size());
    std::vector<std::uint32_t> cur(width, 0), ref(width, 0);
    std::copy(current.begin(), current.end(), cur.begin());
    std::copy(reference.begin(), reference.end(), ref.begin());

    const std::vector<double> phi_ref = estimate_phi(ref, params.eta);
    const std::vector<double> phi_t = estimate_phi(cur, params.eta);
    const std::vector<double> phi_tilde = mixture_phi(phi_ref, phi_t, params.p);
    const std::vector<double> sims = resample_similarities(
        phi_tilde, rec.tokens, ref, params.replicates, params.seed, topic, t);
    rec.threshold = threshold(sims, params.quantile_level);
    rec.observed = cosine(cur, ref);
    rec.detected = *rec.observed < *rec.threshold;
  }
  out.next_run_length = next_run_length(rec.detected, run_length, params.z_max);
  return out;
}

StepResult detect_step(std::size_t topic, std::size_t t,
                       const std::vector<std::vector<std::uint32_t>>& history,
                       std::size_t run_length, const DetectorParams& params) {
  params.validate();
  if (t < 1) fail("detect_step", "t must be >= 1");
  if (history.size() <= t) fail("detect_step", "history does not reach chunk t");
  if (run_length < 1 || run_length > params.z_max) {
    fail("detect_step", "run length " + std::to_string(run_length) + " outside [1, z_max]");
  }
  const std::size_t z = std::min(run_length, t);
  std::size_t width = history[t].size();
  for (std::size_t s = t - z; s < t; ++s) width = std::max(width, history[s].size());
  const std::vector<std::uint32_t> ref = reference_counts(history, t, z, width);
  return detect_counts(topic, t, history[t], ref, z, params);
}

DetectionResult run_detection(const RollingState& state, const DetectorParams& params) {
  params.validate();
  if (state.empty() || state.last() < 1) {
    fail("run_detection", "need at least two modeled chunks");
  }
  const std::size_t K = state.topics;
  const std::size_t T = state.last();
  DetectionResult result;
  result.series.assign(K, {});
  result.changes.assign(K, {});
  std::vector<std::size_t> run_length(K, 1);

  // Only the last z_max chunks are ever referenced.
  std::deque<CountMatrix> window;
  window.push_back(topic_counts(state, 0));
  for (std::size_t t = 1; t <= T; ++t) {
    CountMatrix current = topic_counts(state, t);
    const std::size_t V = current.cols;
    std::vector<StepResult> steps(K);
    parallel_for(K, params.threads, [&](std::size_t k) {
      const std::size_t z = std::min(run_length[k], t);
      std::vector<std::uint32_t> ref(V, 0);
      for (std::size_t back = 1; back <= z; ++back) {
        const CountMatrix& past = window[window.size() - back];
        const auto row = past.row(k);
        for (std::size_t v = 0; v < row.size(); ++v) ref[v] += row[v];
      }
      steps[k] = detect_counts(k, t, current.row(k), ref, z, params);
    });
    for (std::size_t k = 0; k < K; ++k) {
      result.series[k].push_back(steps[k].record);
      if (steps[k].record.detected) result.changes[k].push_back(t);
      run_length[k] = steps[k].next_run_length;
    }
    window.push_back(std::move(current));
    if (window.size() > params.z_max) window.pop_front();
  }
  return result;
}

}  // namespace topicdrift
