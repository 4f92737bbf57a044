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

#include "spinboson/jump_process.hpp"

#include <cmath>
#include <string>

#include "spinboson/error.hpp"
#include "spinboson/simd/pair_sum.hpp"

namespace spinboson {

namespace {

constexpr std::uint64_t kTagPartition = 0x5A01;
constexpr std::uint64_t kTagMoment = 0x5A02;

void require_increasing(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw ArgumentError("times must be finite");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ArgumentError("times must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

}  // namespace

int SpinPath::spin_at(double t) const {
  std::size_t flips = 0;
  for (double j : jump_times) {
    if (j <= t) ++flips; else break;
  }
  return (flips & 1u) ? -initial_sign : initial_sign;
}

void SpinPath::validate() const {
  if (initial_sign != 1 && initial_sign != -1) throw ArgumentError("initial sign must be +1 or -1");
  if (!(horizon > 0.0)) throw ArgumentError("path horizon must be positive");
  for (std::size_t i = 0; i < jump_times.size(); ++i) {
    const double t = jump_times[i];
    if (!(t > 0.0 && t < horizon)) throw ArgumentError("jump times must lie in (0, horizon)");
    if (i > 0 && !(t > jump_times[i - 1])) throw ArgumentError("jump times must be strictly increasing");
  }
}

SpinPath sample_path(double horizon, RandomStream& rng) {
  if (!(horizon > 0.0)) throw ArgumentError("horizon must be positive");
  SpinPath path;
  path.horizon = horizon;
  path.initial_sign = rng.sign();
  for (double t = rng.exponential(1.0); t < horizon; t += rng.exponential(1.0)) path.jump_times.push_back(t);
  return path;
}

double interaction_action(const SpinPath& path, const Kernel& kernel) {
  const std::size_t n = path.jump_times.size();
  thread_local std::vector<double> x, w;
  x.resize(n + 2);
  w.resize(n + 2);
  x[0] = 0.0;
  w[0] = path.initial_sign;
  double sigma = path.initial_sign;
  for (std::size_t j = 0; j < n; ++j) {
    x[j + 1] = path.jump_times[j];
    w[j + 1] = -2.0 * sigma;
    sigma = -sigma;
  }
  x[n + 1] = path.horizon;
  w[n + 1] = -sigma;
  return -2.0 * simd::pair_sum(kernel, x, w);
}

double interaction_action_segments(const SpinPath& path, const Kernel& kernel) {
  std::vector<double> edges;
  edges.reserve(path.jump_times.size() + 2);
  edges.push_back(0.0);
  edges.insert(edges.end(), path.jump_times.begin(), path.jump_times.end());
  edges.push_back(path.horizon);
  double total = 0.0;
  const std::size_t segments = edges.size() - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    const int si = (i & 1u) ? -path.initial_sign : path.initial_sign;
    for (std::size_t j = 0; j < segments; ++j) {
      const int sj = (j & 1u) ? -path.initial_sign : path.initial_sign;
      total += si * sj * kernel.rectangle_mass(edges[i], edges[i + 1], edges[j], edges[j + 1]);
    }
  }
  return total;
}

MCEstimate estimate_Z(double alpha, double horizon, const Kernel& kernel, std::uint64_t samples,
                      std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw ArgumentError("samples must be >= 1");
  if (!(horizon > 0.0)) throw ArgumentError("horizon must be positive");
  if (!std::isfinite(alpha)) throw ArgumentError("alpha must be finite");
  const std::uint64_t key = derive_seed(seed, kTagPartition);
  return batched_mean(samples, seed, workers, [&](std::uint64_t i) {
    RandomStream rng(key, i);
    const SpinPath path = sample_path(horizon, rng);
    const double exponent = 0.5 * alpha * interaction_action(path, kernel);
    if (exponent > 700.0) {
      throw EstimateUnreliable("exp((alpha/2) * action) overflows; alpha * T is too large for plain sampling");
    }
    return std::exp(exponent);
  });
}

double moment_closed_form(std::span<const double> times) {
  if (times.empty()) throw ArgumentError("moment needs at least one time");
  require_increasing(times);
  if (times.size() % 2 == 1) return 0.0;
  double gaps = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); i += 2) gaps += times[i + 1] - times[i];
  return std::exp(-2.0 * gaps);
}

MCEstimate estimate_moment_mc(std::span<const double> times, std::uint64_t samples, std::uint64_t seed,
                              unsigned workers) {
  if (times.empty()) throw ArgumentError("moment needs at least one time");
  if (samples == 0) throw ArgumentError("samples must be >= 1");
  require_increasing(times);
  if (times.front() < 0.0) throw ArgumentError("times must be >= 0");
  const std::uint64_t key = derive_seed(seed, kTagMoment);
  return batched_mean(samples, seed, workers, [&](std::uint64_t i) {
    RandomStream rng(key, i);
    int x = rng.sign();
    // Stream jumps lazily up to the last requested time.
    double next_jump = rng.exponential(1.0);
    int product = 1;
    for (double t : times) {
      while (next_jump <= t) {
        x = -x;
        next_jump += rng.exponential(1.0);
      }
      product *= x;
    }
    return static_cast<double>(product);
  });
}

}  // namespace spinboson
