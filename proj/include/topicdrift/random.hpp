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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace topicdrift {

// All randomness is drawn from std::mt19937_64 engines whose seeds are
// derived from the run seed by hashing a stream tag and a tuple of
// counters. Distinct (tag, counters) give statistically independent
// substreams, so work can be split across threads without changing any
// draw.
using Rng = std::mt19937_64;

enum class StreamTag : std::uint64_t {
  kFitRestart = 1,  // (restart index)
  kChunk = 2,       // (chunk index)
  kReplicate = 3,   // (topic, chunk, replicate)
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag,
                                 std::initializer_list<std::uint64_t> counters) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tag)));
  for (std::uint64_t c : counters) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

// [0, 1) with 53 random bits. Used instead of std::uniform_real_distribution,
// whose output is implementation-defined.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) (Lemire's multiply-shift with rejection).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Variates built only from engine output, so draws do not depend on the
// standard library's distribution implementations.
double standard_normal(Rng& rng);
double gamma_variate(Rng& rng, double shape);  // scale 1
double beta_variate(Rng& rng, double a, double b);
std::uint64_t binomial_variate(Rng& rng, std::uint64_t n, double p);

// Multinomial(n, probs) into `out` by conditional binomials. `probs` need
// not be normalized but must be nonnegative with a positive sum.
void multinomial_variate(Rng& rng, std::uint64_t n, std::span<const double> probs,
                         std::span<std::uint32_t> out);

}  // namespace topicdrift
