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

#include "topicdrift/simd/kernels.hpp"

namespace topicdrift::simd {
namespace {

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, std::size_t topics, double alpha,
                   double eta, double v_eta, double* out) {
  for (std::size_t k = 0; k < topics; ++k) {
    const double a = static_cast<double>(doc_topic[k]) + alpha;
    const double b = static_cast<double>(word_topic[k]) + eta;
    const double c = static_cast<double>(topic_total[k]) + v_eta;
    out[k] = a * b / c;
  }
}

CountDots count_dots(const std::uint32_t* u, const std::uint32_t* v, std::size_t n) {
  CountDots d;
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (static_cast<double>(counts[i]) + eta) / denominator;
  }
}

void mix(const double* a, const double* b, std::size_t n, double p, double* out) {
  const double q = 1.0 - p;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = q * a[i];
    const double right = p * b[i];
    out[i] = left + right;
  }
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet kSet{"scalar", &topic_weights, &count_dots, &smooth, &mix};
  return kSet;
}

}  // namespace topicdrift::simd
