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

#include <cstddef>
#include <cstdint>
#include <functional>

namespace spinboson {

// Compensated (Neumaier) summation.
class NeumaierSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Number of batches used for error bars: at least 100 whenever there are at
// least 100 samples.
inline constexpr std::size_t kDefaultBatches = 128;

// Runs `sample(i)` for i in [0, samples), groups indices into contiguous
// batches, and returns the mean with a batch-means standard error. Batches are
// distributed over `workers` threads, but every batch is summed in index
// order and batches are combined in batch order, so the result is
// bit-identical for any worker count.
MCEstimate batched_mean(std::uint64_t samples, std::uint64_t seed, unsigned workers,
                        const std::function<double(std::uint64_t)>& sample,
                        std::size_t batches = kDefaultBatches);

// Calls body(b) for b in [0, count) on up to `workers` threads. body must only
// write to per-b storage.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace spinboson
