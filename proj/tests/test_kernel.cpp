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

#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "spinboson/error.hpp"
#include "spinboson/kernel.hpp"
#include "spinboson/quadrature.hpp"
#include "spinboson/rng.hpp"

using namespace spinboson;
using doctest::Approx;

namespace {

const Kernel& indicator() {
  static const Kernel k = Kernel::build(KernelSpec::indicator(1.0));
  return k;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("indicator norms") {
  const Kernel& k = indicator();
  CHECK(rel(k.norm_inf(), 2.0 * std::numbers::pi) < 1e-12);
  CHECK(rel(k.norm_l1(), 8.0 * std::numbers::pi) < 1e-12);
  CHECK(k.h(0.0) == k.norm_inf());
}

TEST_CASE("cutoff scaling of the norms") {
  const Kernel k = Kernel::build(KernelSpec::indicator(2.5));
  CHECK(rel(k.norm_inf(), 2.0 * std::numbers::pi * 6.25) < 1e-12);
  CHECK(rel(k.norm_l1(), 8.0 * std::numbers::pi * 2.5) < 1e-12);
}

TEST_CASE("indicator values against the reference table") {
  const Kernel& k = indicator();
  for (const auto& pt : oracle::kKernelPoints) {
    CAPTURE(pt.s);
    CHECK(rel(k.h(pt.s), pt.h) < 1e-12);
    CHECK(k.h(-pt.s) == k.h(pt.s));
    if (pt.s > 0) CHECK(rel(k.phi(pt.s), pt.phi) < 1e-11);
    CHECK(k.phi(-pt.s) == k.phi(pt.s));
  }
  CHECK(k.phi(0.0) == 0.0);
  CHECK(k.phi_prime(0.0) == 0.0);
}

TEST_CASE("phi is convex, phi' odd and bounded by half the l1 norm") {
  const Kernel& k = indicator();
  double prev = k.phi_prime(0.0);
  for (double s = 0.01; s < 500.0; s *= 1.07) {
    const double d = k.phi_prime(s);
    CHECK(d >= prev);
    CHECK(d <= 0.5 * k.norm_l1() * (1 + 1e-12));
    CHECK(k.phi_prime(-s) == -d);
    prev = d;
    const double e = 1e-3 * s;
    CHECK(k.phi(s + e) + k.phi(s - e) - 2 * k.phi(s) >= -1e-9 * k.phi(s));
  }
}

TEST_CASE("phi table agrees with the closed form") {
  const Kernel& k = indicator();
  const PhiTable& tab = k.phi_table();
  REQUIRE(tab.intervals > 0);
  for (double s = 0.0; s < tab.limit(); s += 0.0137) {
    CHECK(std::abs(tab.eval_in_range(s) - k.phi(s)) <= 1e-10 * std::max(1.0, k.phi(s)));
  }
}

TEST_CASE("rectangle mass against direct quadrature") {
  const Kernel& k = indicator();
  const double a = 0.3, b = 1.7, c = 1.1, d = 4.0;
  const double direct = quad::integrate([&](double t) {
    return quad::integrate_pieces([&](double s) { return k.h(t - s); }, c, d, {t}, 1e-10).value;
  }, a, b, 1e-9).value;
  CHECK(rel(k.rectangle_mass(a, b, c, d), direct) < 1e-9);
  CHECK_THROWS_AS(k.rectangle_mass(1.0, 0.0, 0.0, 1.0), ArgumentError);
}

TEST_CASE("h table reproduces piecewise-linear input") {
  const Kernel k = Kernel::build(KernelSpec::h_table({{0.0, 2.0}, {1.0, 1.0}, {3.0, 0.0}}));
  CHECK(k.h(0.5) == Approx(1.5));
  CHECK(k.h(-2.0) == Approx(0.5));
  CHECK(k.h(5.0) == 0.0);
  CHECK(k.norm_inf() == Approx(2.0));
  CHECK(k.norm_l1() == Approx(2.0 * (1.5 + 1.0)));
  // Phi grows linearly once h vanishes.
  CHECK(k.phi(12.0) - k.phi(11.0) == Approx(k.phi_prime(3.0)).epsilon(1e-12));
}

TEST_CASE("h table with first abscissa above zero extends the first value") {
  const Kernel k = Kernel::build(KernelSpec::h_table({{0.5, 3.0}, {1.5, 1.0}}));
  CHECK(k.h(0.0) == Approx(3.0));
  CHECK(k.h(0.25) == Approx(3.0));
  CHECK(k.norm_inf() == Approx(3.0));
}

TEST_CASE("radial table of the indicator reproduces the closed form") {
  std::vector<std::array<double, 2>> pts = {{0.0, 1.0}, {1.0, 1.0}};
  const Kernel k = Kernel::build(KernelSpec::radial_table(pts));
  const Kernel& ref = indicator();
  CHECK(rel(k.norm_inf(), ref.norm_inf()) < 1e-8);
  CHECK(rel(k.norm_l1(), ref.norm_l1()) < 1e-6);
  for (double s : {0.05, 0.5, 2.0, 7.0, 40.0}) {
    CAPTURE(s);
    CHECK(rel(k.h(s), ref.h(s)) < 1e-6);
    CHECK(rel(k.phi(s), ref.phi(s)) < 1e-6);
  }
}

TEST_CASE("zero kernel") {
  const Kernel k = Kernel::build(KernelSpec::h_table({{0.0, 0.0}, {1.0, 0.0}}));
  CHECK(k.is_zero());
  CHECK(k.h(0.3) == 0.0);
  RandomStream r(1, 1);
  CHECK_THROWS_AS(k.sample_displacement(r), SamplingError);
}

TEST_CASE("invalid specifications") {
  CHECK_THROWS_AS(Kernel::build(KernelSpec::indicator(0.0)), ConfigError);
  CHECK_THROWS_AS(Kernel::build(KernelSpec::indicator(-1.0)), ConfigError);
  CHECK_THROWS_AS(Kernel::build(KernelSpec::h_table({{0.0, 1.0}, {0.0, 2.0}})), ConfigError);
  CHECK_THROWS_AS(Kernel::build(KernelSpec::h_table({{0.0, -1.0}})), ConfigError);
  CHECK_THROWS_AS(Kernel::build(KernelSpec::h_table({{0.0, NAN}})), ConfigError);
  CHECK_THROWS_AS(Kernel::build(KernelSpec::radial_table({})), ConfigError);
}

TEST_CASE("displacement sampler matches the normalized density") {
  // E|s| is infinite for this kernel (h ~ 4 pi / s^2); test a probability and
  // a truncated moment instead.
  const Kernel& k = indicator();
  const int n = 400000;
  int below = 0, positive = 0;
  double trunc = 0.0, trunc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream r(77, i);
    const double s = k.sample_displacement(r);
    below += std::abs(s) < 1.0;
    positive += s > 0;
    const double m = std::min(std::abs(s), 10.0);
    trunc += m;
    trunc2 += m * m;
  }
  const double p = oracle::kProbAbsBelow1;
  CHECK(std::abs(below / double(n) - p) < 4.0 * std::sqrt(p * (1 - p) / n));
  CHECK(std::abs(positive / double(n) - 0.5) < 4.0 * std::sqrt(0.25 / n));
  const double mean = trunc / n, sd = std::sqrt(trunc2 / n - mean * mean);
  CHECK(std::abs(mean - oracle::kMeanAbsTruncated10) < 4.0 * sd / std::sqrt(n));
}

TEST_CASE("quantile inverts the cdf") {
  const Kernel& k = indicator();
  for (double u : {1e-9, 0.01, 0.3, 0.5, 0.7, 0.99, 1 - 1e-9}) {
    const double s = k.abs_displacement_quantile(u);
    CHECK(2.0 * k.phi_prime(s) / k.norm_l1() == Approx(u).epsilon(1e-10));
  }
  CHECK(k.abs_displacement_quantile(0.0) == 0.0);
}

}
