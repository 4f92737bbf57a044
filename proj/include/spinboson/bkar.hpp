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

#include <cstdint>
#include <span>
#include <vector>

#include "spinboson/combinatorics.hpp"

namespace spinboson {

// 2p times; base pair i owns the closed interval [t[2i], t[2i+1]].
struct TimeConfiguration {
  std::vector<double> t;

  int order() const { return static_cast<int>(t.size() / 2); }
  // t[2j] < t[2j+1] for every base pair.
  bool pairs_ordered() const;
};

// Closed-interval overlap; touching endpoints count as overlapping.
bool intervals_overlap(std::span<const double> t, int a, int b);

// Fills a p*p row-major 0/1 matrix of pairwise overlaps (diagonal zero).
void overlap_matrix(std::span<const double> t, std::span<std::uint8_t> out);

enum class VIntegration { exact, sampled };

struct BkarOptions {
  VIntegration method = VIntegration::exact;
  std::uint64_t qmc_points = 1'000'000;
  std::uint64_t seed = 0;
};

// prod_{A<B} 1{t_A and t_B disjoint}.
double bkar_lhs(std::span<const double> t);

// Forest-formula expansion of the same product for the partition induced by
// P: sum over every valid F of prod_F (-1{overlap}) times the v-integral of
// the interpolated hardcore factors.
double bkar_rhs(const PerfectMatching& matching, std::span<const double> t, const BkarOptions& options = {});

// |lhs - rhs|.
double verify_bkar_identity(const PerfectMatching& matching, const TimeConfiguration& config,
                            const BkarOptions& options = {});

}  // namespace spinboson
