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

#include "spinboson/kernel.hpp"
#include "spinboson/rng.hpp"
#include "spinboson/stats.hpp"

namespace spinboson {

// One realization of X(t) = B (-1)^{N(t)} on [0, horizon].
struct SpinPath {
  int initial_sign = 1;
  std::vector<double> jump_times;  // strictly increasing, inside (0, horizon)
  double horizon = 0.0;

  int spin_at(double t) const;
  // Throws ArgumentError if the invariants are violated.
  void validate() const;
};

// Unit-rate Poisson jumps built from exponential inter-arrival times, with a
// fair random initial sign.
SpinPath sample_path(double horizon, RandomStream& rng);

// int_0^T int_0^T X(t) X(s) h(t - s) dt ds, without the alpha/2 prefactor.
// Uses the jump-point form -2 sum_{j<m} d_j d_m Phi(x_m - x_j) on the SIMD
// pair-sum kernel.
double interaction_action(const SpinPath& path, const Kernel& kernel);

// Same quantity as a double sum of signed rectangle masses over the
// constant-spin segments. Quadratic in the number of segments; kept as the
// reference route.
double interaction_action_segments(const SpinPath& path, const Kernel& kernel);

// Z(alpha, T) = E[exp((alpha / 2) * action)] by plain path sampling.
// Bit-identical for fixed (seed, samples) regardless of `workers`.
MCEstimate estimate_Z(double alpha, double horizon, const Kernel& kernel, std::uint64_t samples,
                      std::uint64_t seed, unsigned workers = 1);

// E[X(t_1) ... X(t_q)] in closed form: zero for odd q, otherwise
// exp(-2 [(t_2 - t_1) + (t_4 - t_3) + ...]).
double moment_closed_form(std::span<const double> times);

// Monte Carlo estimate of the same moment from simulated paths.
MCEstimate estimate_moment_mc(std::span<const double> times, std::uint64_t samples, std::uint64_t seed,
                              unsigned workers = 1);

}  // namespace spinboson
