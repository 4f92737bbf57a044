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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinboson/kernel.hpp"
#include "spinboson/rng.hpp"
#include "spinboson/simd/pair_sum.hpp"

using namespace spinboson;

namespace {

double naive(const Kernel& k, const std::vector<double>& x, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t m = j + 1; m < x.size(); ++m) s += w[j] * w[m] * k.phi(x[m] - x[j]);
  }
  return s;
}

void random_points(RandomStream& r, std::size_t n, double span, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = span * r.uniform();
    w[i] = r.sign() * (0.5 + r.uniform());
  }
  std::sort(x.begin(), x.end());
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernel matches the naive double loop") {
  const Kernel k = Kernel::build(KernelSpec::indicator(1.0));
  RandomStream r(1, 0);
  std::vector<double> x, w;
  for (std::size_t n : {0u, 1u, 2u, 5u, 37u, 200u}) {
    random_points(r, n, 300.0, x, w);  // spans past the table limit
    const double ref = naive(k, x, w);
    CHECK(simd::pair_sum_scalar(k, x, w) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
  }
}

#if defined(SPINBOSON_BUILD_AVX2)
TEST_CASE("avx2 kernel matches scalar") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 not supported on this CPU; skipping");
    return;
  }
  RandomStream r(2, 0);
  std::vector<double> x, w;
  for (const KernelSpec& spec : {KernelSpec::indicator(1.0), KernelSpec::indicator(3.0),
                                 KernelSpec::h_table({{0.0, 1.0}, {0.5, 0.7}, {2.0, 0.0}})}) {
    const Kernel k = Kernel::build(spec);
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 9u, 63u, 64u, 65u, 301u}) {
      for (double span : {0.5, 20.0, 500.0}) {
        random_points(r, n, span, x, w);
        const double s = simd::pair_sum_scalar(k, x, w);
        const double v = simd::pair_sum_avx2(k, x, w);
        CAPTURE(n);
        CAPTURE(span);
        CHECK(std::abs(s - v) <= 1e-12 * (1.0 + std::abs(s)) * n);
      }
    }
  }
}
#endif

TEST_CASE("backend override") {
  const simd::Backend before = simd::active_backend();
  simd::set_backend(simd::Backend::scalar);
  CHECK(simd::active_backend() == simd::Backend::scalar);
  simd::set_backend(simd::Backend::avx2);
  CHECK(simd::active_backend() == (simd::avx2_available() ? simd::Backend::avx2 : simd::Backend::scalar));
  simd::set_backend(std::nullopt);
  CHECK(simd::active_backend() == before);
  CHECK(simd::backend_name(simd::Backend::scalar) == "scalar");
}

TEST_CASE("dispatching wrapper agrees with both backends") {
  const Kernel k = Kernel::build(KernelSpec::indicator(1.0));
  RandomStream r(3, 0);
  std::vector<double> x, w;
  random_points(r, 50, 40.0, x, w);
  simd::set_backend(simd::Backend::scalar);
  const double a = simd::pair_sum(k, x, w);
  simd::set_backend(std::nullopt);
  const double b = simd::pair_sum(k, x, w);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

}
