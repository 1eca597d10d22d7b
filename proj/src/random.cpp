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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "topicdrift/random.hpp"

namespace topicdrift {
namespace {

double open_uniform(Rng& rng) {
  double u = 0.0;
  do u = uniform01(rng);
  while (u == 0.0);
  return u;
}

// Inversion from P(X = 0); only used while n * p is small, so q^n cannot
// underflow.
std::uint64_t binomial_inversion(Rng& rng, std::uint64_t n, double p) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double f = std::pow(q, static_cast<double>(n));
  double u = uniform01(rng);
  std::uint64_t k = 0;
  while (u > f && k < n) {
    u -= f;
    ++k;
    f *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
  }
  return k;
}

constexpr double kInversionMean = 10.0;

}  // namespace

double standard_normal(Rng& rng) {
  // Marsaglia polar method; the second variate is discarded to keep every
  // call self-contained.
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double gamma_variate(Rng& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
  if (shape < 1.0) {
    return gamma_variate(rng, shape + 1.0) * std::pow(open_uniform(rng), 1.0 / shape);
  }
  // Marsaglia and Tsang.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0, v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = open_uniform(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_variate(Rng& rng, double a, double b) {
  const double x = gamma_variate(rng, a);
  const double y = gamma_variate(rng, b);
  return x / (x + y);
}

// Order-statistic recursion: the i-th smallest of n uniforms is
// Beta(i, n + 1 - i); conditioning on which side of p it falls halves n.
std::uint64_t binomial_variate(Rng& rng, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p must lie in [0, 1]");
  // Invariant: result = base + sign * Bin(n, p) for the current n and p.
  std::int64_t base = 0;
  std::int64_t sign = 1;
  for (;;) {
    if (n == 0 || p <= 0.0) break;
    if (p >= 1.0) {
      base += sign * static_cast<std::int64_t>(n);
      break;
    }
    if (p > 0.5) {  // Bin(n, p) = n - Bin(n, 1 - p)
      base += sign * static_cast<std::int64_t>(n);
      sign = -sign;
      p = 1.0 - p;
    }
    if (static_cast<double>(n) * p < kInversionMean) {
      base += sign * static_cast<std::int64_t>(binomial_inversion(rng, n, p));
      break;
    }
    const std::uint64_t i = (n + 1) / 2;
    const double u = beta_variate(rng, static_cast<double>(i), static_cast<double>(n + 1 - i));
    if (u < p) {
      base += sign * static_cast<std::int64_t>(i);
      n -= i;
      p = (p - u) / (1.0 - u);
    } else {
      n = i - 1;
      p = p / u;
    }
  }
  return static_cast<std::uint64_t>(base);
}

void multinomial_variate(Rng& rng, std::uint64_t n, std::span<const double> probs,
                         std::span<std::uint32_t> out) {
  if (out.size() < probs.size()) throw std::invalid_argument("multinomial output too short");
  std::fill(out.begin(), out.end(), 0u);
  // Suffix sums keep the conditional probabilities free of cancellation.
  std::vector<double> rest(probs.size() + 1, 0.0);
  for (std::size_t v = probs.size(); v-- > 0;) rest[v] = rest[v + 1] + probs[v];
  if (!(rest[0] > 0.0)) throw std::invalid_argument("multinomial probabilities sum to zero");
  std::size_t last = probs.size();
  while (last > 0 && probs[last - 1] <= 0.0) --last;
  for (std::size_t v = 0; v < last && n > 0; ++v) {
    if (probs[v] <= 0.0) continue;
    const std::uint64_t x =
        v + 1 == last ? n : binomial_variate(rng, n, std::min(1.0, probs[v] / rest[v]));
    out[v] = static_cast<std::uint32_t>(x);
    n -= x;
  }
}

}  // namespace topicdrift
