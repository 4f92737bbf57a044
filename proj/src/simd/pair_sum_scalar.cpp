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

#include "spinboson/simd/pair_sum.hpp"

namespace spinboson::simd {

double pair_sum_scalar(const Kernel& kernel, std::span<const double> x, std::span<const double> w) {
  const PhiTable& table = kernel.phi_table();
  const double limit = table.limit();
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t m = j + 1; m < n; ++m) {
      const double d = x[m] - x[j];
      const double phi = d < limit ? table.eval_in_range(d) : kernel.phi(d);
      row += w[m] * phi;
    }
    total += w[j] * row;
  }
  return total;
}

}  // namespace spinboson::simd
