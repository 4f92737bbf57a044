// Copyright 2026 The spinboson Authors.
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
#include <string>

#include "spinboson/simd/pair_sum.hpp"

namespace spinboson::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SPINBOSON_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("SPINBOSON_SIMD")) {
    if (std::string(env) == "scalar") return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

// -1: automatic; otherwise the Backend value.
std::atomic<int> g_override{-1};

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Backend active_backend() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) {
    const auto b = static_cast<Backend>(forced);
    return (b == Backend::avx2 && !avx2_available()) ? Backend::scalar : b;
  }
  static const Backend detected = detect();
  return detected;
}

void set_backend(std::optional<Backend> backend) {
  g_override.store(backend ? static_cast<int>(*backend) : -1, std::memory_order_relaxed);
}

double pair_sum(const Kernel& kernel, std::span<const double> x, std::span<const double> w) {
#if defined(SPINBOSON_BUILD_AVX2)
  if (active_backend() == Backend::avx2) return pair_sum_avx2(kernel, x, w);
#endif
  return pair_sum_scalar(kernel, x, w);
}

}  // namespace spinboson::simd
