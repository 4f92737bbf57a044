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
#include <vector>

#include "spinboson/error.hpp"
#include "spinboson/jump_process.hpp"
#include "spinboson/kernel.hpp"

using namespace spinboson;
using doctest::Approx;

namespace {

const Kernel& indicator() {
  static const Kernel k = Kernel::build(KernelSpec::indicator(1.0));
  return k;
}

}  // namespace

TEST_SUITE("jump_process") {

TEST_CASE("spin_at follows the jumps") {
  SpinPath p{-1, {0.5, 1.5}, 3.0};
  p.validate();
  CHECK(p.spin_at(0.0) == -1);
  CHECK(p.spin_at(0.5) == 1);
  CHECK(p.spin_at(1.0) == 1);
  CHECK(p.spin_at(2.0) == -1);
  CHECK_THROWS_AS((SpinPath{2, {}, 1.0}.validate()), ArgumentError);
  CHECK_THROWS_AS((SpinPath{1, {0.5, 0.4}, 1.0}.validate()), ArgumentError);
  CHECK_THROWS_AS((SpinPath{1, {1.5}, 1.0}.validate()), ArgumentError);
}

TEST_CASE("sampled paths are valid with Poisson jump counts") {
  const int n = 20000;
  double count = 0.0;
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream r(3, i);
    const SpinPath p = sample_path(4.0, r);
    p.validate();
    count += p.jump_times.size();
    plus += p.initial_sign == 1;
  }
  CHECK(std::abs(count / n - 4.0) < 5.0 * std::sqrt(4.0 / n));
  CHECK(std::abs(plus / double(n) - 0.5) < 5.0 * std::sqrt(0.25 / n));
}

TEST_CASE("action of a constant path is 2 Phi(T)") {
  for (double T : {0.5, 3.0, 40.0, 300.0}) {
    const SpinPath p{1, {}, T};
    CHECK(interaction_action(p, indicator()) == Approx(2.0 * indicator().phi(T)).epsilon(1e-10));
  }
}

TEST_CASE("pair-sum action equals the segment double sum") {
  for (int i = 0; i < 200; ++i) {
    RandomStream r(11, i);
    const SpinPath p = sample_path(1.0 + 30.0 * r.uniform(), r);
    const double fast = interaction_action(p, indicator());
    const double ref = interaction_action_segments(p, indicator());
    CHECK(fast == Approx(ref).epsilon(1e-9).scale(indicator().phi(p.horizon)));
  }
}

TEST_CASE("moment closed form") {
  const std::vector<double> one = {0.3};
  const std::vector<double> two = {0.3, 1.0};
  const std::vector<double> four = {0.0, 1.0, 1.5, 2.5};
  CHECK(moment_closed_form(one) == 0.0);
  CHECK(moment_closed_form(two) == Approx(std::exp(-1.4)));
  CHECK(moment_closed_form(four) == Approx(std::exp(-4.0)));
  const std::vector<double> bad = {1.0, 1.0};
  CHECK_THROWS_AS(moment_closed_form(bad), ArgumentError);
  CHECK_THROWS_AS(moment_closed_form(std::vector<double>{}), ArgumentError);
}

TEST_CASE("moment Monte Carlo agrees with the closed form") {
  const std::vector<std::vector<double>> tuples = {{0.2}, {0.2, 0.9}, {0.1, 0.4, 2.0}, {0.0, 0.3, 0.8, 1.1}};
  for (const auto& t : tuples) {
    const MCEstimate e = estimate_moment_mc(t, 200000, 5);
    const double exact = moment_closed_form(t);
    CAPTURE(t.size());
    CHECK(std::abs(e.value - exact) < 4.0 * e.std_error + 1e-12);
  }
}

TEST_CASE("Z at alpha = 0 is exactly one") {
  const MCEstimate z = estimate_Z(0.0, 5.0, indicator(), 10, 1);
  CHECK(z.value == 1.0);
  CHECK(z.std_error == 0.0);
}

TEST_CASE("Z estimate is worker-count independent and exceeds one for h >= 0") {
  const MCEstimate a = estimate_Z(1e-3, 10.0, indicator(), 20000, 4, 1);
  const MCEstimate b = estimate_Z(1e-3, 10.0, indicator(), 20000, 4, 8);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value > 1.0);
}

TEST_CASE("Z estimate rejects bad input and overflow") {
  CHECK_THROWS_AS(estimate_Z(0.1, -1.0, indicator(), 10, 1), ArgumentError);
  CHECK_THROWS_AS(estimate_Z(0.1, 1.0, indicator(), 0, 1), ArgumentError);
  CHECK_THROWS_AS(estimate_Z(50.0, 200.0, indicator(), 4, 1), EstimateUnreliable);
}

}
