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

// Data-parallel inner loops of the sampler and the detector.
//
// Every variant must produce bit-identical results to the scalar reference:
// the element-wise kernels perform the same IEEE operations in the same
// order per element (the build disables floating-point contraction), and
// the dot-product kernel accumulates exact 64-bit integer products, where
// reassociation is harmless.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace topicdrift::simd {

struct CountDots {
  std::uint64_t uv = 0;
  std::uint64_t uu = 0;
  std::uint64_t vv = 0;

  friend bool operator==(const CountDots&, const CountDots&) = default;
};

struct KernelSet {
  std::string_view name;

  // out[k] = (doc_topic[k] + alpha) * (word_topic[k] + eta) / (topic_total[k] + v_eta)
  void (*topic_weights)(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, std::size_t topics, double alpha,
                        double eta, double v_eta, double* out);

  // Exact inner products of two nonnegative count vectors.
  CountDots (*count_dots)(const std::uint32_t* u, const std::uint32_t* v, std::size_t n);

  // out[i] = (counts[i] + eta) / denominator
  void (*smooth)(const std::uint32_t* counts, std::size_t n, double eta,
                 double denominator, double* out);

  // out[i] = (1 - p) * a[i] + p * b[i]
  void (*mix)(const double* a, const double* b, std::size_t n, double p, double* out);
};

const KernelSet& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelSet* avx2_kernels();

enum class KernelChoice { kAuto, kScalar, kAvx2 };

// Kernels used by the library. Defaults to kAuto, which picks the widest
// supported variant; the TOPICDRIFT_KERNELS environment variable
// ("scalar", "avx2", "auto") overrides the default at first use.
const KernelSet& active_kernels();

// Throws std::invalid_argument if the requested variant is unavailable.
void select_kernels(KernelChoice choice);
KernelChoice parse_kernel_choice(std::string_view name);

}  // namespace topicdrift::simd
