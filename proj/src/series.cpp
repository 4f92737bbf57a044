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

#include "spinboson/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spinboson/error.hpp"

namespace spinboson {

double kernel_norm_max(const Kernel& kernel) { return std::max(kernel.norm_inf(), kernel.norm_l1()); }

RadiusBound radius_bound(const Kernel& kernel) {
  RadiusBound r;
  const double m = kernel_norm_max(kernel);
  if (!std::isfinite(m)) throw DivergenceError("kernel norms are not finite");
  if (m == 0.0) {
    r.unbounded = true;
    r.r_min = r.lambda_radius = std::numeric_limits<double>::infinity();
    return r;
  }
  r.r_min = 1.0 / (32.0 * std::exp(0.5) * m);
  r.lambda_radius = 4.0 * std::numbers::pi * std::sqrt(r.r_min);
  return r;
}

double delta_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0, 1)");
  const double q = 1.0 - gamma;
  return std::exp(gamma) / (4.0 * q * q) * std::max(1.0, 2.0 * q);
}

double certificate_K(const Kernel& kernel, double gamma) {
  return 16.0 * kernel_norm_max(kernel) * delta_gamma(gamma) / gamma;
}

double best_grid_gamma() {
  double best = 0.1;
  for (int i = 2; i <= 9; ++i) {
    const double g = i / 10.0;
    if (delta_gamma(g) / g < delta_gamma(best) / best) best = g;
  }
  return best;
}

double log_series_tail(double x, int p_max) {
  if (!(x >= 0.0 && x < 1.0)) throw OutsideCertificate("log series tail needs 0 <= x < 1");
  if (p_max < 0) throw ArgumentError("p_max must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x <= 0.5) {
    // Direct summation avoids cancelling -log(1-x) against the partial sum.
    double sum = 0.0;
    double pw = std::pow(x, p_max + 1);
    for (int p = p_max + 1; p < p_max + 2000; ++p) {
      const double term = pw / p;
      sum += term;
      if (term < 1e-18 * sum) break;
      pw *= x;
    }
    return sum;
  }
  double partial = 0.0, pw = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    pw *= x;
    partial += pw / p;
  }
  return std::max(0.0, -std::log1p(-x) - partial);
}

double tail_bound(double alpha, int p_max, const Kernel& kernel, double gamma) {
  const double x = certificate_K(kernel, gamma) * std::abs(alpha);
  if (!(x < 1.0)) throw OutsideCertificate("K |alpha| >= 1: no remainder bound");
  return log_series_tail(x, p_max);
}

double alpha_from_lambda(double lambda) {
  const double r = lambda / (4.0 * std::numbers::pi);
  return r * r;
}

double lambda_from_alpha(double alpha) {
  if (alpha < 0.0) throw ArgumentError("alpha must be nonnegative to map to a real coupling");
  return 4.0 * std::numbers::pi * std::sqrt(alpha);
}

SeriesResult energy(double alpha, int p_max, const Kernel& kernel, Method method, const Budget& budget, double gamma,
                    int p_cap) {
  if (!std::isfinite(alpha)) throw ArgumentError("alpha must be finite");
  check_order(p_max, p_cap);
  SeriesResult out;
  out.alpha = alpha;
  out.gamma = gamma;
  out.delta = delta_gamma(gamma);
  out.K = certificate_K(kernel, gamma);
  out.radius_bound = radius_bound(kernel).r_min;
  out.note = "energy density of the Ising functional; equals the ground-state energy conditional on Bloch's formula";

  double var = 0.0;
  double quad_err = 0.0;
  double weight = 1.0;  // alpha^p / p!
  for (int p = 1; p <= p_max; ++p) {
    weight *= alpha / p;
    Budget b = budget;
    b.seed = budget.seed + static_cast<std::uint64_t>(p);
    CoefficientEstimate c = coefficient(p, kernel, IntegrationDomain::pinned(), method, b, nullptr, p_cap);
    out.energy -= weight * c.value;
    var += weight * weight * c.statistical_error * c.statistical_error;
    quad_err += std::abs(weight) * c.quadrature_error;
    if (!c.warning.empty()) out.warning = "c_" + std::to_string(p) + ": " + c.warning;
    out.coefficients.push_back(std::move(c));
  }
  out.numerical_error = std::sqrt(var) + quad_err;

  const double x = out.K * std::abs(alpha);
  if (x < 1.0) {
    out.tail_bound = log_series_tail(x, p_max);
    out.certified = true;
  } else {
    out.warning += out.warning.empty() ? "" : "; ";
    out.warning += "|alpha| outside the certified region; no remainder bound";
  }
  return out;
}

SeriesResult energy_from_lambda(double lambda, int p_max, const Kernel& kernel, Method method, const Budget& budget,
                                double gamma, int p_cap) {
  SeriesResult r = energy(alpha_from_lambda(lambda), p_max, kernel, method, budget, gamma, p_cap);
  r.lambda = lambda;
  return r;
}

std::complex<double> evaluate_series(std::complex<double> alpha, std::span<const double> c) {
  std::complex<double> sum = 0.0, w = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    w *= alpha / static_cast<double>(i + 1);
    sum -= w * c[i];
  }
  return sum;
}

double log_z_series(double alpha, std::span<const double> C) {
  return -evaluate_series(alpha, C).real();
}

}  // namespace spinboson
