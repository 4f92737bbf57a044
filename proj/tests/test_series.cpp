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
#include "spinboson/series.hpp"

using namespace spinboson;
using doctest::Approx;

namespace {

const Kernel& indicator() {
  static const Kernel k = Kernel::build(KernelSpec::indicator(1.0));
  return k;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("radius bound for the indicator kernel") {
  const RadiusBound r = radius_bound(indicator());
  CHECK(r.r_min == Approx(1.0 / (256.0 * std::numbers::pi * std::exp(0.5))).epsilon(1e-12));
  CHECK(r.r_min == Approx(7.54e-4).epsilon(1e-3));
  CHECK(r.lambda_radius == Approx(0.34).epsilon(0.02));
  CHECK(r.r_min * 32.0 * std::exp(0.5) * kernel_norm_max(indicator()) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("radius scales inversely with the kernel") {
  const Kernel h1 = Kernel::build(KernelSpec::h_table({{0.0, 2.0}, {4.0, 0.0}}));
  const Kernel h3 = Kernel::build(KernelSpec::h_table({{0.0, 6.0}, {4.0, 0.0}}));
  CHECK(radius_bound(h3).r_min == Approx(radius_bound(h1).r_min / 3.0));
}

TEST_CASE("zero kernel radius is unbounded") {
  const Kernel z = Kernel::build(KernelSpec::h_table({{0.0, 0.0}}));
  const RadiusBound r = radius_bound(z);
  CHECK(r.unbounded);
  CHECK(std::isinf(r.r_min));
}

TEST_CASE("delta(gamma) and K") {
  CHECK(delta_gamma(0.5) == Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK(delta_gamma(0.25) == Approx(std::exp(0.25) / (4 * 0.5625) * 1.5));
  CHECK(delta_gamma(0.75) == Approx(std::exp(0.75) / (4 * 0.0625)));
  CHECK_THROWS_AS(delta_gamma(0.0), ArgumentError);
  CHECK_THROWS_AS(delta_gamma(1.0), ArgumentError);
  CHECK(certificate_K(indicator()) * radius_bound(indicator()).r_min == Approx(1.0).epsilon(1e-14));
  for (double g = 0.1; g < 0.95; g += 0.1) {
    CHECK(std::abs(delta_gamma(g + 1e-7) - delta_gamma(g)) < 1e-5 * delta_gamma(g));
  }
  CHECK(delta_gamma(1e-6) == Approx(0.5).epsilon(1e-5));
}

TEST_CASE("best grid gamma") {
  // delta/gamma is minimized at (3 - sqrt 5)/2 ~ 0.382, so 0.4 on the grid.
  CHECK(best_grid_gamma() == Approx(0.4));
  CHECK(delta_gamma(0.4) / 0.4 < delta_gamma(0.5) / 0.5);
}

TEST_CASE("tail bound values") {
  const double r = radius_bound(indicator()).r_min;
  CHECK(tail_bound(0.0, 2, indicator()) == 0.0);
  CHECK(tail_bound(r / 2, 2, indicator()) == Approx(std::log(2.0) - 0.5 - 0.125).epsilon(1e-12));
  CHECK(tail_bound(r / 2, 3, indicator()) == Approx(std::log(2.0) - 0.5 - 0.125 - 1.0 / 24).epsilon(1e-11));
  CHECK(log_series_tail(0.9, 1) == Approx(-std::log(0.1) - 0.9).epsilon(1e-14));
  CHECK(log_series_tail(1e-3, 3) == Approx(1e-12 / 4 + 1e-15 / 5).epsilon(1e-10));
  CHECK_THROWS_AS(tail_bound(r, 2, indicator()), OutsideCertificate);
  CHECK_THROWS_AS(tail_bound(-2 * r, 2, indicator()), OutsideCertificate);
}

TEST_CASE("tail bound is monotone") {
  const double r = radius_bound(indicator()).r_min;
  for (int pm = 1; pm < 10; ++pm) {
    CHECK(tail_bound(0.6 * r, pm + 1, indicator()) < tail_bound(0.6 * r, pm, indicator()));
  }
  for (double a = 0.1; a < 0.95; a += 0.1) {
    CHECK(tail_bound(a * r, 3, indicator()) < tail_bound((a + 0.05) * r, 3, indicator()));
  }
}

TEST_CASE("lambda alpha round trip") {
  for (double l : {0.0, 0.01, 0.34, 1.0, 12.0}) {
    CHECK(lambda_from_alpha(alpha_from_lambda(l)) == Approx(l).epsilon(1e-15));
  }
  CHECK(alpha_from_lambda(4 * std::numbers::pi) == Approx(1.0));
  CHECK_THROWS_AS(lambda_from_alpha(-1.0), ArgumentError);
}

TEST_CASE("energy series") {
  Budget b;
  const SeriesResult zero = energy(0.0, 2, indicator(), Method::quadrature, b);
  CHECK(zero.energy == 0.0);
  CHECK(*zero.tail_bound == 0.0);

  const double r = radius_bound(indicator()).r_min;
  const SeriesResult first = energy(r / 10, 1, indicator(), Method::quadrature, b);
  CHECK(first.energy < 0.0);
  CHECK(first.certified);
  CHECK(first.energy == Approx(-(r / 10) * oracle::kC1).epsilon(1e-9));
  const SeriesResult second = energy(r / 10, 2, indicator(), Method::quadrature, b);
  // Relative change from adding p = 2 stays inside the p_max = 1 tail bound.
  CHECK(std::abs(second.energy - first.energy) <= *first.tail_bound);
  CHECK(second.note.find("Bloch") != std::string::npos);

  const SeriesResult outside = energy(2 * r, 1, indicator(), Method::quadrature, b);
  CHECK_FALSE(outside.certified);
  CHECK_FALSE(outside.tail_bound.has_value());
  CHECK_FALSE(outside.warning.empty());

  const SeriesResult lam = energy_from_lambda(0.1, 1, indicator(), Method::quadrature, b);
  CHECK(lam.alpha == Approx(alpha_from_lambda(0.1)));
  CHECK(lam.lambda == 0.1);
}

TEST_CASE("complex evaluation matches the real one on the real axis") {
  const std::vector<double> c = {oracle::kC1, oracle::kC2};
  const double a = 1e-4;
  CHECK(evaluate_series(a, c).real() == Approx(-(a * c[0] + a * a * c[1] / 2)));
  CHECK(evaluate_series(a, c).imag() == 0.0);
  const auto z = evaluate_series({0.0, a}, c);
  CHECK(z.real() == Approx(a * a * c[1] / 2));
  CHECK(z.imag() == Approx(-a * c[0]));
  CHECK(log_z_series(a, c) == Approx(a * c[0] + a * a * c[1] / 2));
}

}
