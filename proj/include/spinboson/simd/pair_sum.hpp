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

#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "spinboson/kernel.hpp"

// Pairwise Phi sums over the jump points of a spin path. This is the inner
// loop of the path action: sum_{j < m} w_j w_m Phi(x_m - x_j) for sorted x.
// A scalar reference kernel and an AVX2 variant are provided; the variant is
// picked once at runtime from CPU support, or forced with set_backend() /
// SPINBOSON_SIMD=scalar.

namespace spinboson::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

// True when the AVX2 kernel was compiled in and the CPU supports AVX2 + FMA.
bool avx2_available();

Backend active_backend();
// Overrides automatic selection; std::nullopt restores it. Requesting avx2 on
// a machine without it falls back to scalar.
void set_backend(std::optional<Backend> backend);

// Requires x sorted ascending and x.size() == w.size().
double pair_sum(const Kernel& kernel, std::span<const double> x, std::span<const double> w);

double pair_sum_scalar(const Kernel& kernel, std::span<const double> x, std::span<const double> w);
#if defined(SPINBOSON_BUILD_AVX2)
double pair_sum_avx2(const Kernel& kernel, std::span<const double> x, std::span<const double> w);
#endif

}  // namespace spinboson::simd
