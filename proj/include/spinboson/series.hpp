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

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinboson/integrator.hpp"
#include "spinboson/kernel.hpp"

namespace spinboson {

inline constexpr double kDefaultGamma = 0.5;

// max(||h||_inf, ||h||_1)
double kernel_norm_max(const Kernel& kernel);

struct RadiusBound {
  double r_min = 0.0;          // +inf when unbounded
  double lambda_radius = 0.0;  // 4 pi sqrt(r_min)
  bool unbounded = false;      // zero kernel
};

// R_min = 1 / (32 sqrt(e) max(||h||_inf, ||h||_1)).
RadiusBound radius_bound(const Kernel& kernel);

// e^g / (4 (1-g)^2) * max(1, 2(1-g)); g in (0, 1).
double delta_gamma(double gamma);

// K(g) = 16 max(||h||_inf, ||h||_1) delta(g) / g, so that K(1/2) R_min = 1.
double certificate_K(const Kernel& kernel, double gamma = kDefaultGamma);

// Grid point of {0.1, 0.2, ..., 0.9} minimizing delta(g)/g.
double best_grid_gamma();

// sum_{p > p_max} x^p / p for 0 <= x < 1.
double log_series_tail(double x, int p_max);

// sum_{p > p_max} (K |alpha|)^p / p. Throws OutsideCertificate when K|alpha| >= 1.
double tail_bound(double alpha, int p_max, const Kernel& kernel, double gamma = kDefaultGamma);

double alpha_from_lambda(double lambda);
double lambda_from_alpha(double alpha);  // alpha >= 0

struct SeriesResult {
  double alpha = 0.0;
  std::optional<double> lambda;
  std::vector<CoefficientEstimate> coefficients;  // c_1 .. c_pmax
  double energy = 0.0;                            // -sum alpha^p c_p / p!
  double numerical_error = 0.0;                   // statistical (1 sigma) plus quadrature
  std::optional<double> tail_bound;               // empty outside the certificate
  bool certified = false;
  double radius_bound = 0.0;
  double K = 0.0;
  double gamma = kDefaultGamma;
  double delta = 0.0;
  std::string note;
  std::string warning;
};

// Energy density lim -(1/T) log Z(alpha, T), truncated at p_max.
SeriesResult energy(double alpha, int p_max, const Kernel& kernel, Method method, const Budget& budget,
                    double gamma = kDefaultGamma, int p_cap = kDefaultPMax);
SeriesResult energy_from_lambda(double lambda, int p_max, const Kernel& kernel, Method method, const Budget& budget,
                                double gamma = kDefaultGamma, int p_cap = kDefaultPMax);

// -sum_p alpha^p c_p / p! for complex alpha; c[0] is c_1.
std::complex<double> evaluate_series(std::complex<double> alpha, std::span<const double> c);

// log Z(alpha, T) ~ sum_p alpha^p C_p(T) / p!; C[0] is C_1(T).
double log_z_series(double alpha, std::span<const double> C);

}  // namespace spinboson
