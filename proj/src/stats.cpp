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

#include "spinboson/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spinboson {

void NeumaierSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

MCEstimate batched_mean(std::uint64_t samples, std::uint64_t seed, unsigned workers,
                        const std::function<double(std::uint64_t)>& sample, std::size_t batches) {
  MCEstimate est;
  est.samples = samples;
  est.seed = seed;
  if (samples == 0) return est;
  const std::size_t nb = static_cast<std::size_t>(std::min<std::uint64_t>(samples, std::max<std::size_t>(1, batches)));
  std::vector<double> sums(nb, 0.0);
  std::vector<std::uint64_t> counts(nb, 0);
  parallel_for(nb, workers, [&](std::size_t b) {
    const std::uint64_t lo = samples * b / nb;
    const std::uint64_t hi = samples * (b + 1) / nb;
    NeumaierSum acc;
    for (std::uint64_t i = lo; i < hi; ++i) acc.add(sample(i));
    sums[b] = acc.value();
    counts[b] = hi - lo;
  });

  NeumaierSum total;
  for (double s : sums) total.add(s);
  const double n = static_cast<double>(samples);
  est.value = total.value() / n;
  if (nb > 1) {
    NeumaierSum dev;
    for (std::size_t b = 0; b < nb; ++b) {
      const double nb_i = static_cast<double>(counts[b]);
      const double d = sums[b] - nb_i * est.value;  // n_b * (m_b - m)
      dev.add(d * d);
    }
    const double var = dev.value() / (n * n) * static_cast<double>(nb) / static_cast<double>(nb - 1);
    est.std_error = std::sqrt(std::max(0.0, var));
  }
  return est;
}

}  // namespace spinboson
