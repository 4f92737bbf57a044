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

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "spinboson/rng.hpp"

namespace spinboson {

enum class KernelMode {
  indicator,     // |f(k)|^2 = 1{|k| <= cutoff}, omega(k) = |k|
  radial_table,  // samples (k, |f(k)|^2), massless dispersion
  h_table,       // samples (s, h(s)) for s >= 0
};

struct KernelSpec {
  KernelMode mode = KernelMode::indicator;
  double cutoff = 1.0;
  // Abscissa/value samples for the table modes, strictly increasing in the
  // abscissa. Linear interpolation in between; zero past the last sample and
  // constant before the first one.
  std::vector<std::array<double, 2>> points;

  static KernelSpec indicator(double cutoff);
  static KernelSpec radial_table(std::vector<std::array<double, 2>> points);
  static KernelSpec h_table(std::vector<std::array<double, 2>> points);

  // Throws ConfigError when the invariants do not hold.
  void validate() const;
};

inline constexpr double kDefaultKernelTolerance = 1e-9;

// Uniform-step table of the second antiderivative Phi on [0, step * intervals],
// one quintic polynomial per interval in the local variable u in [0, 1).
// Coefficients for interval i live at coeffs[8 * i + 0..5]; slots 6 and 7
// are padding so each interval occupies one 64-byte line.
struct PhiTable {
  double step = 0.0;
  double inv_step = 0.0;
  std::size_t intervals = 0;
  std::vector<double> coeffs;

  double limit() const { return step * static_cast<double>(intervals); }
  // Valid for 0 <= s < limit().
  double eval_in_range(double s) const;
};

// Interaction kernel h(s) = int |f(k)|^2 / omega(k) exp(-|s| omega(k)) d^3k
// together with its norms and second antiderivative Phi (Phi'' = h,
// Phi(0) = Phi'(0) = 0, Phi even). Immutable after build; every member is
// safe to call concurrently.
class Kernel {
 public:
  static Kernel build(const KernelSpec& spec, double tol = kDefaultKernelTolerance);

  const KernelSpec& spec() const { return *spec_; }
  double tolerance() const { return tol_; }

  double h(double s) const;
  // First antiderivative int_0^s h (odd in s).
  double phi_prime(double s) const;
  // Second antiderivative (even in s).
  double phi(double s) const;

  double norm_inf() const { return norm_inf_; }
  double norm_l1() const { return norm_l1_; }
  bool is_zero() const { return norm_l1_ == 0.0; }

  // int_a^b dt int_c^d ds h(t - s).
  double rectangle_mass(double a, double b, double c, double d) const;

  // Signed displacement with density h(|s|) / ||h||_1.
  double sample_displacement(RandomStream& rng) const;
  // Inverse of the CDF of |s| under the same density; u in [0, 1).
  double abs_displacement_quantile(double u) const;

  const PhiTable& phi_table() const { return *table_; }

  struct Impl;

 private:
  Kernel() = default;

  std::shared_ptr<const KernelSpec> spec_;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const PhiTable> table_;
  double tol_ = kDefaultKernelTolerance;
  double norm_inf_ = 0.0;
  double norm_l1_ = 0.0;
};

}  // namespace spinboson
