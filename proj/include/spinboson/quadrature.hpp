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

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spinboson::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr unsigned kMaxDepth = 15;

// Adaptive Gauss-Kronrod (7/15) on [a, b]; either end may be infinite.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, kMaxDepth, rel_tol, &err, &l1);
  return {value, err};
}

// Integrates over consecutive pieces [cuts[i], cuts[i+1]]. Cuts are sorted and
// clamped to [a, b] first; points outside are dropped. Use this whenever the
// integrand has a known kink or jump.
template <class F>
Result integrate_pieces(F&& f, double a, double b, std::vector<double> cuts, double rel_tol) {
  cuts.push_back(a);
  cuts.push_back(b);
  for (double& c : cuts) c = std::clamp(c, a, b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Result total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Result piece = integrate(f, cuts[i], cuts[i + 1], rel_tol);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

Result integrate_fn(const std::function<double(double)>& f, double a, double b, double rel_tol);

}  // namespace spinboson::quad
