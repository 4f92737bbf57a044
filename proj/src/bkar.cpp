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

#include "spinboson/bkar.hpp"

#include <algorithm>
#include <cmath>

#include "spinboson/error.hpp"
#include "spinboson/rng.hpp"

namespace spinboson {

bool TimeConfiguration::pairs_ordered() const {
  for (int j = 0; j < order(); ++j) {
    if (!(t[2 * j] < t[2 * j + 1])) return false;
  }
  return true;
}

bool intervals_overlap(std::span<const double> t, int a, int b) {
  return std::max(t[2 * a], t[2 * b]) <= std::min(t[2 * a + 1], t[2 * b + 1]);
}

void overlap_matrix(std::span<const double> t, std::span<std::uint8_t> out) {
  const int p = static_cast<int>(t.size() / 2);
  for (int a = 0; a < p; ++a) {
    out[a * p + a] = 0;
    for (int b = a + 1; b < p; ++b) {
      const std::uint8_t ov = intervals_overlap(t, a, b) ? 1 : 0;
      out[a * p + b] = ov;
      out[b * p + a] = ov;
    }
  }
}

double bkar_lhs(std::span<const double> t) {
  const int p = static_cast<int>(t.size() / 2);
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      if (intervals_overlap(t, a, b)) return 0.0;
    }
  }
  return 1.0;
}

double bkar_rhs(const PerfectMatching& matching, std::span<const double> t, const BkarOptions& options) {
  const int p = matching.order();
  if (static_cast<int>(t.size()) != 2 * p) throw ArgumentError("time configuration size must be 2p");
  std::vector<std::uint8_t> overlap(static_cast<std::size_t>(p) * p);
  overlap_matrix(t, overlap);
  const BlockPartition partition = partition_join(matching);

  double total = 0.0;
  std::uint64_t index = 0;
  for_each_forest_selection(matching, false, [&](const ForestSelection& f) {
    const std::uint64_t term_seed = derive_seed(options.seed, index++);
    for (const Pair& e : f.micro_edges) {
      if (!overlap[e[0] * p + e[1]]) return;  // -1{overlap} vanishes
    }
    const CouplingStructure coupling(partition, f);
    const double weight = options.method == VIntegration::exact
                              ? coupling.hardcore_weight_exact(overlap)
                              : coupling.hardcore_weight_sampled(overlap, options.qmc_points, term_seed);
    total += (f.size() % 2 ? -1.0 : 1.0) * weight;
  }, kHardPMax);
  return total;
}

double verify_bkar_identity(const PerfectMatching& matching, const TimeConfiguration& config,
                            const BkarOptions& options) {
  if (!config.pairs_ordered()) throw ArgumentError("each base pair needs t[2j] < t[2j+1]");
  return std::abs(bkar_lhs(config.t) - bkar_rhs(matching, config.t, options));
}

}  // namespace spinboson
