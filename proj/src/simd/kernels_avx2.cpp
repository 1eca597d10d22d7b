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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "topicdrift/simd/kernels.hpp"

namespace topicdrift::simd {
namespace {

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, std::size_t topics, double alpha,
                   double eta, double v_eta, double* out) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d ve = _mm256_set1_pd(eta);
  const __m256d vv = _mm256_set1_pd(v_eta);
  std::size_t k = 0;
  for (; k + 4 <= topics; k += 4) {
    const __m256d a = _mm256_add_pd(
        _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(doc_topic + k))),
        va);
    const __m256d b = _mm256_add_pd(
        _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(word_topic + k))),
        ve);
    const __m256d c = _mm256_add_pd(
        _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(topic_total + k))),
        vv);
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_mul_pd(a, b), c));
  }
  for (; k < topics; ++k) {
    const double a = static_cast<double>(doc_topic[k]) + alpha;
    const double b = static_cast<double>(word_topic[k]) + eta;
    const double c = static_cast<double>(topic_total[k]) + v_eta;
    out[k] = a * b / c;
  }
}

std::uint64_t horizontal_sum(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

CountDots count_dots(const std::uint32_t* u, const std::uint32_t* v, std::size_t n) {
  __m256i uv = _mm256_setzero_si256();
  __m256i uu = _mm256_setzero_si256();
  __m256i vv = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Widen four u32 lanes to u64; _mm256_mul_epu32 multiplies the low
    // halves, giving exact 64-bit products.
    const __m256i a =
        _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(u + i)));
    const __m256i b =
        _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(v + i)));
    uv = _mm256_add_epi64(uv, _mm256_mul_epu32(a, b));
    uu = _mm256_add_epi64(uu, _mm256_mul_epu32(a, a));
    vv = _mm256_add_epi64(vv, _mm256_mul_epu32(b, b));
  }
  CountDots d{horizontal_sum(uv), horizontal_sum(uu), horizontal_sum(vv)};
  for (; i < n; ++i) {
    const std::uint64_t a = u[i];
    const std::uint64_t b = v[i];
    d.uv += a * b;
    d.uu += a * a;
    d.vv += b * b;
  }
  return d;
}

void smooth(const std::uint32_t* counts, std::size_t n, double eta, double denominator,
            double* out) {
  const __m256d ve = _mm256_set1_pd(eta);
  const __m256d vd = _mm256_set1_pd(denominator);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Bias to signed, convert, unbias: exact over the full u32 range.
    const __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i));
    const __m128i biased = _mm_xor_si128(raw, _mm_set1_epi32(static_cast<int>(0x80000000u)));
    const __m256d c = _mm256_add_pd(_mm256_cvtepi32_pd(biased), _mm256_set1_pd(2147483648.0));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_add_pd(c, ve), vd));
  }
  for (; i < n; ++i) out[i] = (static_cast<double>(counts[i]) + eta) / denominator;
}

void mix(const double* a, const double* b, std::size_t n, double p, double* out) {
  const double q = 1.0 - p;
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vp = _mm256_set1_pd(p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d left = _mm256_mul_pd(vq, _mm256_loadu_pd(a + i));
    const __m256d right = _mm256_mul_pd(vp, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(left, right));
  }
  for (; i < n; ++i) {
    const double left = q * a[i];
    const double right = p * b[i];
    out[i] = left + right;
  }
}

}  // namespace

const KernelSet* avx2_kernels_unchecked() {
  static const KernelSet kSet{"avx2", &topic_weights, &count_dots, &smooth, &mix};
  return &kSet;
}

}  // namespace topicdrift::simd
