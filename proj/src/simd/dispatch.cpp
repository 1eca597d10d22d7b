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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "topicdrift/simd/kernels.hpp"

namespace topicdrift::simd {

#if defined(TOPICDRIFT_HAVE_AVX2)
const KernelSet* avx2_kernels_unchecked();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(TOPICDRIFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet* resolve(KernelChoice choice) {
  switch (choice) {
    case KernelChoice::kScalar:
      return &scalar_kernels();
    case KernelChoice::kAvx2:
      return avx2_kernels();
    case KernelChoice::kAuto:
      if (const KernelSet* k = avx2_kernels()) return k;
      return &scalar_kernels();
  }
  return &scalar_kernels();
}

const KernelSet* initial() {
  KernelChoice choice = KernelChoice::kAuto;
  if (const char* env = std::getenv("TOPICDRIFT_KERNELS")) choice = parse_kernel_choice(env);
  const KernelSet* set = resolve(choice);
  return set ? set : &scalar_kernels();
}

std::atomic<const KernelSet*>& slot() {
  static std::atomic<const KernelSet*> active{initial()};
  return active;
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(TOPICDRIFT_HAVE_AVX2)
  if (cpu_has_avx2()) return avx2_kernels_unchecked();
#endif
  return nullptr;
}

const KernelSet& active_kernels() { return *slot().load(std::memory_order_acquire); }

void select_kernels(KernelChoice choice) {
  const KernelSet* set = resolve(choice);
  if (set == nullptr) throw std::invalid_argument("requested kernel variant is unavailable");
  slot().store(set, std::memory_order_release);
}

KernelChoice parse_kernel_choice(std::string_view name) {
  if (name == "auto") return KernelChoice::kAuto;
  if (name == "scalar") return KernelChoice::kScalar;
  if (name == "avx2") return KernelChoice::kAvx2;
  throw std::invalid_argument("unknown kernel variant '" + std::string(name) + "'");
}

}  // namespace topicdrift::simd
