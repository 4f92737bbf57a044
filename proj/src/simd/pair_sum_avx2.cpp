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

#include <immintrin.h>

#include "spinboson/simd/pair_sum.hpp"

namespace spinboson::simd {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double pair_sum_avx2(const Kernel& kernel, std::span<const double> x, std::span<const double> w) {
  const PhiTable& table = kernel.phi_table();
  const double limit = table.limit();
  const double* base = table.coeffs.data();
  const std::size_t n = x.size();
  const __m256d inv_step = _mm256_set1_pd(table.inv_step);
  const __m256d vlimit = _mm256_set1_pd(limit);
  const __m256d zero = _mm256_setzero_pd();

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = x[j];
    const __m256d vxj = _mm256_set1_pd(xj);
    __m256d acc = zero;
    double scalar_row = 0.0;
    std::size_t m = j + 1;
    for (; m + 4 <= n; m += 4) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(&x[m]), vxj);
      const __m256d in_range = _mm256_cmp_pd(d, vlimit, _CMP_LT_OQ);
      const int mask = _mm256_movemask_pd(in_range);
      // Out-of-range lanes read interval 0 and are masked out below.
      const __m256d t = _mm256_and_pd(_mm256_mul_pd(d, inv_step), in_range);
      const __m128i idx = _mm256_cvttpd_epi32(t);
      const __m256d u = _mm256_sub_pd(t, _mm256_cvtepi32_pd(idx));
      const __m128i off = _mm_slli_epi32(idx, 3);
      const __m256d c5 = _mm256_i32gather_pd(base + 5, off, 8);
      const __m256d c4 = _mm256_i32gather_pd(base + 4, off, 8);
      const __m256d c3 = _mm256_i32gather_pd(base + 3, off, 8);
      const __m256d c2 = _mm256_i32gather_pd(base + 2, off, 8);
      const __m256d c1 = _mm256_i32gather_pd(base + 1, off, 8);
      const __m256d c0 = _mm256_i32gather_pd(base + 0, off, 8);
      __m256d p = _mm256_fmadd_pd(u, c5, c4);
      p = _mm256_fmadd_pd(u, p, c3);
      p = _mm256_fmadd_pd(u, p, c2);
      p = _mm256_fmadd_pd(u, p, c1);
      p = _mm256_fmadd_pd(u, p, c0);
      p = _mm256_and_pd(p, in_range);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&w[m]), p, acc);
      if (mask != 0xF) {
        for (int lane = 0; lane < 4; ++lane) {
          if (!(mask & (1 << lane))) scalar_row += w[m + lane] * kernel.phi(x[m + lane] - xj);
        }
      }
    }
    for (; m < n; ++m) {
      const double d = x[m] - xj;
      scalar_row += w[m] * (d < limit ? table.eval_in_range(d) : kernel.phi(d));
    }
    total += w[j] * (hsum(acc) + scalar_row);
  }
  return total;
}

}  // namespace spinboson::simd
