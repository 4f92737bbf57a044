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

#include "spinboson/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinboson/error.hpp"
#include "spinboson/quadrature.hpp"

namespace spinboson {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

// Quintic Hermite interpolation on [x0, x1] from (f, f', f'') at both ends.
double hermite5(double x0, double x1, double x, double f0, double f1, double d0, double d1, double e0,
                double e1) {
  const double dx = x1 - x0;
  const double u = (x - x0) / dx;
  d0 *= dx;
  d1 *= dx;
  e0 *= dx * dx;
  e1 *= dx * dx;
  const double df = f1 - f0;
  const double c3 = 10.0 * df - 6.0 * d0 - 4.0 * d1 - 1.5 * e0 + 0.5 * e1;
  const double c4 = -15.0 * df + 8.0 * d0 + 7.0 * d1 + 1.5 * e0 - e1;
  const double c5 = 6.0 * df - 3.0 * (d0 + d1) - 0.5 * (e0 - e1);
  return f0 + u * (d0 + u * (0.5 * e0 + u * (c3 + u * (c4 + u * c5))));
}

}  // namespace

// Evaluation strategy behind a Kernel. All methods take s >= 0.
struct Kernel::Impl {
  virtual ~Impl() = default;
  virtual double h_pos(double s) const = 0;
  virtual double dphi_pos(double s) const = 0;
  virtual double phi_pos(double s) const = 0;
  // int_s^infinity h.
  virtual double tail_pos(double s) const = 0;
  // Largest |s| the sampler needs to reach; infinity when unbounded.
  virtual double support_limit() const { return std::numeric_limits<double>::infinity(); }
};

namespace {

// |f|^2 = 1{|k| <= lambda}: h(s) = 4 pi (1 - e^{-x}(1 + x)) / s^2 with x = lambda |s|.
struct IndicatorImpl final : Kernel::Impl {
  double lambda;

  explicit IndicatorImpl(double cutoff) : lambda(cutoff) {}

  double h_pos(double s) const override {
    const double x = lambda * s;
    if (x < 0.5) {
      // sum_{n>=2} (-1)^n (n-1) x^{n-2} / n!
      double term = 0.5;  // x^{n-2} / n! at n = 2
      double sum = 0.0;
      for (int n = 2; n < 40; ++n) {
        const double contrib = ((n & 1) ? -1.0 : 1.0) * (n - 1) * term;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
        term *= x / (n + 1);
      }
      return kFourPi * lambda * lambda * sum;
    }
    return kFourPi * (1.0 - std::exp(-x) * (1.0 + x)) / (s * s);
  }

  double dphi_pos(double s) const override {
    const double x = lambda * s;
    if (x < 0.5) {
      // sum_{n>=2} (-1)^n x^{n-1} / n!
      double term = 0.5 * x;
      double sum = 0.0;
      for (int n = 2; n < 40; ++n) {
        const double contrib = (n & 1) ? -term : term;
        sum += contrib;
        if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
        term *= x / (n + 1);
      }
      return kFourPi * lambda * sum;
    }
    return kFourPi * lambda * (1.0 + std::expm1(-x) / x);
  }

  double phi_pos(double s) const override {
    const double x = lambda * s;
    if (x < 2.0) {
      // x - Ein(x) = sum_{n>=2} (-1)^n x^n / (n n!)
      double pow_over_fact = 0.5 * x * x;  // x^n / n!
      double sum = 0.0;
      for (int n = 2; n < 60; ++n) {
        const double contrib = ((n & 1) ? -1.0 : 1.0) * pow_over_fact / n;
        sum += contrib;
        if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
        pow_over_fact *= x / (n + 1);
      }
      return kFourPi * sum;
    }
    // Ein(x) = E1(x) + ln x + gamma, and std::expint(-x) = -E1(x).
    const double e1 = -std::expint(-x);
    return kFourPi * (x - e1 - std::log(x) - kEulerGamma);
  }

  double tail_pos(double s) const override {
    const double x = lambda * s;
    if (x == 0.0) return kFourPi * lambda;
    return kFourPi * lambda * (-std::expm1(-x)) / x;
  }
};

// Piecewise-linear h on [0, s_last], zero beyond. Phi' and Phi are exact
// piecewise polynomials.
struct HTableImpl final : Kernel::Impl {
  std::vector<double> s, h, dphi, phi;
  double half_l1 = 0.0;

  explicit HTableImpl(const std::vector<std::array<double, 2>>& pts) {
    if (pts.front()[0] > 0.0) {
      s.push_back(0.0);
      h.push_back(pts.front()[1]);
    }
    for (const auto& p : pts) {
      s.push_back(p[0]);
      h.push_back(p[1]);
    }
    dphi.assign(s.size(), 0.0);
    phi.assign(s.size(), 0.0);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const double d = s[i + 1] - s[i];
      const double m = (h[i + 1] - h[i]) / d;
      dphi[i + 1] = dphi[i] + h[i] * d + 0.5 * m * d * d;
      phi[i + 1] = phi[i] + dphi[i] * d + 0.5 * h[i] * d * d + m * d * d * d / 6.0;
    }
    half_l1 = dphi.back();
  }

  std::size_t segment(double x) const {
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - s.begin()) - 1));
  }

  double h_pos(double x) const override {
    if (x > s.back()) return 0.0;
    if (x == s.back()) return h.back();
    const std::size_t i = segment(x);
    const double m = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
    return h[i] + m * (x - s[i]);
  }

  double dphi_pos(double x) const override {
    if (x >= s.back()) return dphi.back();
    const std::size_t i = segment(x);
    const double d = x - s[i];
    const double m = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
    return dphi[i] + h[i] * d + 0.5 * m * d * d;
  }

  double phi_pos(double x) const override {
    if (x >= s.back()) return phi.back() + dphi.back() * (x - s.back());
    const std::size_t i = segment(x);
    const double d = x - s[i];
    const double m = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
    return phi[i] + dphi[i] * d + 0.5 * h[i] * d * d + m * d * d * d / 6.0;
  }

  double tail_pos(double x) const override {
    if (x >= s.back()) return 0.0;
    const std::size_t i = segment(x);
    // Integrate the remainder of segment i, then whole segments.
    const double m = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
    const double hx = h[i] + m * (x - s[i]);
    double rest = 0.5 * (hx + h[i + 1]) * (s[i + 1] - x);
    for (std::size_t j = i + 1; j + 1 < s.size(); ++j) rest += 0.5 * (h[j] + h[j + 1]) * (s[j + 1] - s[j]);
    return rest;
  }

  double support_limit() const override { return s.back(); }
};

// Radial massless form factor: h(s) = 4 pi int_0^inf k g(k) e^{-|s| k} dk
// with g = |f|^2 piecewise linear. The s-dependence is tabulated once on a
// geometric grid; Phi, Phi', h and the tail are interpolated with quintic
// Hermite polynomials. Past the grid h is treated as zero and Phi continues
// linearly.
struct RadialImpl final : Kernel::Impl {
  std::vector<double> k, g;
  std::vector<double> grid;
  // Per node: h, h', h'', Phi', Phi, tail.
  std::vector<double> h0, h1, h2, dphi, phi, tail;
  double grid_ratio_log = 0.0;
  double s_min = 0.0;

  RadialImpl(const std::vector<std::array<double, 2>>& pts, double tol) {
    if (pts.front()[0] > 0.0) {
      k.push_back(0.0);
      g.push_back(pts.front()[1]);
    }
    for (const auto& p : pts) {
      k.push_back(p[0]);
      g.push_back(p[1]);
    }
    build_grid(tol);
  }

  double g_at(std::size_t seg, double kk) const {
    const double t = (kk - k[seg]) / (k[seg + 1] - k[seg]);
    return g[seg] + t * (g[seg + 1] - g[seg]);
  }

  template <class F>
  double k_integral(F&& weight) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (g[i] == 0.0 && g[i + 1] == 0.0) continue;
      auto f = [&](double kk) { return g_at(i, kk) * weight(kk); };
      total += quad::integrate(f, k[i], k[i + 1], 1e-12).value;
    }
    return total;
  }

  static double expm1_plus(double y) {
    // e^{-y} - 1 + y without cancellation.
    if (y < 1e-2) {
      return y * y * (0.5 - y * (1.0 / 6.0 - y * (1.0 / 24.0 - y * (1.0 / 120.0 - y / 720.0))));
    }
    return std::expm1(-y) + y;
  }

  void fill_node(double s) {
    grid.push_back(s);
    h0.push_back(kFourPi * k_integral([s](double kk) { return kk * std::exp(-kk * s); }));
    h1.push_back(-kFourPi * k_integral([s](double kk) { return kk * kk * std::exp(-kk * s); }));
    h2.push_back(kFourPi * k_integral([s](double kk) { return kk * kk * kk * std::exp(-kk * s); }));
    dphi.push_back(kFourPi * k_integral([s](double kk) { return -std::expm1(-kk * s); }));
    phi.push_back(kFourPi * k_integral([s](double kk) { return kk > 0.0 ? expm1_plus(kk * s) / kk : 0.0; }));
    tail.push_back(kFourPi * k_integral([s](double kk) { return std::exp(-kk * s); }));
  }

  void build_grid(double tol) {
    const double k_scale = k.back() > 0.0 ? k.back() : 1.0;
    double l1_half = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) l1_half += 0.5 * (g[i] + g[i + 1]) * (k[i + 1] - k[i]);
    l1_half *= kFourPi;
    s_min = 1e-3 / k_scale;
    if (l1_half == 0.0) {
      for (double s : {0.0, s_min}) fill_node(s);
      grid_ratio_log = std::log(2.0);
      return;
    }
    const double threshold = std::min(1e-12, tol * 1e-3) * 2.0 * l1_half;
    const double s_cap = 1e18 / k_scale;
    double s_max = s_min;
    while (kFourPi * k_integral([s_max](double kk) { return std::exp(-kk * s_max); }) > threshold) {
      s_max *= 2.0;
      if (s_max > s_cap) {
        throw DivergenceError("kernel tail does not decay below the requested tolerance; ||h||_1 is not resolved");
      }
    }
    const double ratio = std::exp2(1.0 / 64.0);
    grid_ratio_log = std::log(ratio);
    fill_node(0.0);
    for (double s = s_min; grid.back() < s_max; s *= ratio) fill_node(s);
  }

  // Index i with grid[i] <= s < grid[i+1]; requires s < grid.back().
  std::size_t locate(double s) const {
    if (s < s_min) return 0;
    auto i = static_cast<std::size_t>(std::log(s / s_min) / grid_ratio_log) + 1;
    i = std::min(i, grid.size() - 2);
    while (i > 0 && grid[i] > s) --i;
    while (i + 2 < grid.size() && grid[i + 1] <= s) ++i;
    return i;
  }

  double h_pos(double s) const override {
    if (s >= grid.back()) return 0.0;
    const std::size_t i = locate(s);
    return hermite5(grid[i], grid[i + 1], s, h0[i], h0[i + 1], h1[i], h1[i + 1], h2[i], h2[i + 1]);
  }

  double dphi_pos(double s) const override {
    if (s >= grid.back()) return dphi.back();
    const std::size_t i = locate(s);
    return hermite5(grid[i], grid[i + 1], s, dphi[i], dphi[i + 1], h0[i], h0[i + 1], h1[i], h1[i + 1]);
  }

  double phi_pos(double s) const override {
    if (s >= grid.back()) return phi.back() + dphi.back() * (s - grid.back());
    const std::size_t i = locate(s);
    return hermite5(grid[i], grid[i + 1], s, phi[i], phi[i + 1], dphi[i], dphi[i + 1], h0[i], h0[i + 1]);
  }

  double tail_pos(double s) const override {
    if (s >= grid.back()) return 0.0;
    const std::size_t i = locate(s);
    return hermite5(grid[i], grid[i + 1], s, tail[i], tail[i + 1], -h0[i], -h0[i + 1], -h1[i], -h1[i + 1]);
  }

  double support_limit() const override { return grid.back(); }
};

bool all_finite_nonneg(const std::vector<std::array<double, 2>>& pts) {
  return std::all_of(pts.begin(), pts.end(), [](const auto& p) {
    return std::isfinite(p[0]) && std::isfinite(p[1]) && p[1] >= 0.0 && p[0] >= 0.0;
  });
}

std::shared_ptr<const PhiTable> build_phi_table(const Kernel::Impl& impl, double norm_inf, double norm_l1) {
  auto table = std::make_shared<PhiTable>();
  constexpr std::size_t kIntervals = 8192;
  constexpr double kPerWidth = 128.0;
  const double width = (norm_inf > 0.0 && norm_l1 > 0.0) ? norm_l1 / (2.0 * norm_inf) : 1.0;
  table->step = width / kPerWidth;
  table->inv_step = 1.0 / table->step;
  table->intervals = kIntervals;
  table->coeffs.assign(8 * kIntervals, 0.0);
  if (norm_l1 == 0.0) return table;

  std::vector<double> f(kIntervals + 1), d(kIntervals + 1), e(kIntervals + 1);
  for (std::size_t i = 0; i <= kIntervals; ++i) {
    const double s = table->step * static_cast<double>(i);
    f[i] = impl.phi_pos(s);
    d[i] = impl.dphi_pos(s);
    e[i] = impl.h_pos(s);
  }
  const double dx = table->step;
  for (std::size_t i = 0; i < kIntervals; ++i) {
    const double d0 = d[i] * dx, d1 = d[i + 1] * dx;
    const double e0 = e[i] * dx * dx, e1 = e[i + 1] * dx * dx;
    const double df = f[i + 1] - f[i];
    double* c = &table->coeffs[8 * i];
    c[0] = f[i];
    c[1] = d0;
    c[2] = 0.5 * e0;
    c[3] = 10.0 * df - 6.0 * d0 - 4.0 * d1 - 1.5 * e0 + 0.5 * e1;
    c[4] = -15.0 * df + 8.0 * d0 + 7.0 * d1 + 1.5 * e0 - e1;
    c[5] = 6.0 * df - 3.0 * (d0 + d1) - 0.5 * (e0 - e1);
  }
  return table;
}

}  // namespace

double PhiTable::eval_in_range(double s) const {
  const double t = s * inv_step;
  const auto i = static_cast<std::size_t>(t);
  const double u = t - static_cast<double>(i);
  const double* c = &coeffs[8 * i];
  return c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))));
}

KernelSpec KernelSpec::indicator(double cutoff) {
  KernelSpec spec;
  spec.mode = KernelMode::indicator;
  spec.cutoff = cutoff;
  return spec;
}

KernelSpec KernelSpec::radial_table(std::vector<std::array<double, 2>> points) {
  KernelSpec spec;
  spec.mode = KernelMode::radial_table;
  spec.points = std::move(points);
  return spec;
}

KernelSpec KernelSpec::h_table(std::vector<std::array<double, 2>> points) {
  KernelSpec spec;
  spec.mode = KernelMode::h_table;
  spec.points = std::move(points);
  return spec;
}

void KernelSpec::validate() const {
  if (mode == KernelMode::indicator) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
      throw ConfigError("indicator kernel requires a finite cutoff > 0");
    }
    return;
  }
  if (points.empty()) throw ConfigError("kernel table must contain at least one point");
  if (!all_finite_nonneg(points)) {
    throw ConfigError("kernel table entries must be finite with abscissa >= 0 and value >= 0");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i][0] > points[i - 1][0])) {
      throw ConfigError("kernel table abscissae must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

Kernel Kernel::build(const KernelSpec& spec, double tol) {
  spec.validate();
  if (!(tol > 0.0) || !(tol < 1.0)) throw ConfigError("kernel tolerance must lie in (0, 1)");
  Kernel kernel;
  kernel.spec_ = std::make_shared<const KernelSpec>(spec);
  kernel.tol_ = tol;
  switch (spec.mode) {
    case KernelMode::indicator: {
      kernel.impl_ = std::make_shared<const IndicatorImpl>(spec.cutoff);
      kernel.norm_inf_ = 2.0 * std::numbers::pi * spec.cutoff * spec.cutoff;
      kernel.norm_l1_ = 8.0 * std::numbers::pi * spec.cutoff;
      break;
    }
    case KernelMode::h_table: {
      auto impl = std::make_shared<const HTableImpl>(spec.points);
      kernel.norm_inf_ = *std::max_element(impl->h.begin(), impl->h.end());
      kernel.norm_l1_ = 2.0 * impl->half_l1;
      kernel.impl_ = impl;
      break;
    }
    case KernelMode::radial_table: {
      auto impl = std::make_shared<const RadialImpl>(spec.points, tol);
      // Exact for piecewise-linear g: int k g is piecewise quadratic (Simpson),
      // int g piecewise linear (trapezoid).
      double first = 0.0, zeroth = 0.0;
      for (std::size_t i = 0; i + 1 < impl->k.size(); ++i) {
        const double a = impl->k[i], b = impl->k[i + 1];
        const double ga = impl->g[i], gb = impl->g[i + 1];
        const double mid = 0.5 * (a + b);
        first += (b - a) / 6.0 * (a * ga + 4.0 * mid * 0.5 * (ga + gb) + b * gb);
        zeroth += 0.5 * (ga + gb) * (b - a);
      }
      kernel.norm_inf_ = kFourPi * first;
      kernel.norm_l1_ = 2.0 * kFourPi * zeroth;
      kernel.impl_ = impl;
      break;
    }
  }
  if (!std::isfinite(kernel.norm_inf_) || !std::isfinite(kernel.norm_l1_)) {
    throw DivergenceError("kernel norms are not finite");
  }
  kernel.table_ = build_phi_table(*kernel.impl_, kernel.norm_inf_, kernel.norm_l1_);
  return kernel;
}

double Kernel::h(double s) const { return impl_->h_pos(std::abs(s)); }

double Kernel::phi_prime(double s) const {
  const double v = impl_->dphi_pos(std::abs(s));
  return s < 0.0 ? -v : v;
}

double Kernel::phi(double s) const { return impl_->phi_pos(std::abs(s)); }

double Kernel::rectangle_mass(double a, double b, double c, double d) const {
  if (a > b || c > d) throw ArgumentError("rectangle_mass: bounds must satisfy a <= b and c <= d");
  return phi(b - c) - phi(a - c) - phi(b - d) + phi(a - d);
}

double Kernel::abs_displacement_quantile(double u) const {
  if (is_zero()) throw SamplingError("cannot sample from a zero kernel");
  if (!(u >= 0.0 && u < 1.0)) throw ArgumentError("quantile level must lie in [0, 1)");
  const double half = 0.5 * norm_l1_;
  const bool use_tail = u > 0.5;
  const double target = use_tail ? (1.0 - u) * half : u * half;
  // f is increasing in s and crosses zero at the quantile.
  auto f = [&](double s) { return use_tail ? target - impl_->tail_pos(s) : impl_->dphi_pos(s) - target; };
  if (target == 0.0 && !use_tail) return 0.0;

  const double limit = impl_->support_limit();
  double lo = 0.0;
  double hi = std::min(limit, 1.0);
  while (f(hi) < 0.0) {
    if (hi >= limit) return limit;
    lo = hi;
    hi = std::min(limit, 2.0 * hi);
    if (!std::isfinite(hi) || hi > 1e300) return lo;
  }
  double s = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fs = f(s);
    if (std::abs(fs) <= 1e-14 * half) break;
    if (fs < 0.0) lo = s; else hi = s;
    const double slope = impl_->h_pos(s);
    double next = slope > 0.0 ? s - fs / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * hi) {
      s = next;
      break;
    }
    s = next;
  }
  return s;
}

double Kernel::sample_displacement(RandomStream& rng) const {
  if (is_zero()) throw SamplingError("cannot sample from a zero kernel");
  const int sgn = rng.sign();
  double u = rng.uniform();
  // uniform() is in (0,1); the quantile needs [0,1).
  const double s = abs_displacement_quantile(u);
  return sgn * s;
}

}  // namespace spinboson
