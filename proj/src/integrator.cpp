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

#include "spinboson/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "spinboson/bkar.hpp"
#include "spinboson/error.hpp"
#include "spinboson/quadrature.hpp"
#include "spinboson/rng.hpp"
#include "spinboson/stats.hpp"

namespace spinboson {

namespace {

ForestSelection validated(const BlockPartition& partition, ForestSelection forest) {
  if (!validate_forest_selection(partition, forest)) throw StructureError("invalid forest selection");
  return forest;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integrand without the sign; the v-integral is exact.
double term_weight(const ClusterTerm& term, std::span<const double> t, const Kernel& kernel,
                   std::vector<std::uint8_t>& overlap) {
  const int p = term.order();
  double length = 0.0;
  for (int j = 0; j < p; ++j) {
    if (!(t[2 * j] < t[2 * j + 1])) return 0.0;
    length += t[2 * j + 1] - t[2 * j];
  }
  // Far below any attainable tolerance; also keeps quadrature out of
  // subnormal arithmetic, where relative error estimates never converge.
  if (length > 320.0) return 0.0;
  overlap.resize(static_cast<std::size_t>(p) * p);
  overlap_matrix(t, overlap);
  for (const Pair& e : term.forest().micro_edges) {
    if (!overlap[e[0] * p + e[1]]) return 0.0;
  }
  double w = term.coupling().hardcore_weight_exact(overlap);
  if (w == 0.0) return 0.0;
  for (int a = 0; a < 2 * p; ++a) {
    const int b = term.matching().partner(a);
    if (a < b) w *= kernel.h(t[a] - t[b]);
  }
  return w * std::exp(-2.0 * length);
}

double span_of(std::span<const double> t) {
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  return *hi - *lo;
}

double window(const IntegrationDomain& domain, std::span<const double> t) {
  if (!domain.finite()) return 1.0;
  return std::max(0.0, *domain.horizon - span_of(t));
}

quad::Result quadrature_p1(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                           const Budget& budget) {
  std::vector<std::uint8_t> ov;
  const bool left = budget.pin_index == 0;
  auto f = [&](double len) {
    const double t[2] = {left ? 0.0 : -len, left ? len : 0.0};
    return term_weight(term, t, kernel, ov) * window(domain, t);
  };
  const double upper = domain.finite() ? *domain.horizon : kInf;
  return quad::integrate(f, 0.0, upper, budget.tolerance);
}

// Two base pairs: J holds the pinned point, K is free. Variables are the two
// lengths and the left endpoint c of K; c is cut wherever an overlap or a
// kernel argument changes regime.
quad::Result quadrature_p2(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                           const Budget& budget) {
  const int pin = budget.pin_index;
  const int J = pin / 2;
  const int K = 1 - J;
  const double outer_tol = budget.tolerance;
  const double mid_tol = std::max(outer_tol * 1e-2, 1e-12);
  const double inner_tol = std::max(outer_tol * 1e-3, 1e-13);
  const double upper = domain.finite() ? *domain.horizon : kInf;

  auto over_c = [&](double lj, double lk) {
    thread_local std::vector<std::uint8_t> ov;
    const double j0 = pin % 2 == 0 ? 0.0 : -lj;
    const double j1 = j0 + lj;
    double lo = -kInf, hi = kInf;
    if (domain.finite()) {
      lo = j1 - *domain.horizon;
      hi = j0 + *domain.horizon - lk;
      if (!(lo < hi)) return 0.0;
    }
    auto g = [&](double c) {
      double t[4];
      t[2 * J] = j0;
      t[2 * J + 1] = j1;
      t[2 * K] = c;
      t[2 * K + 1] = c + lk;
      return term_weight(term, t, kernel, ov) * window(domain, t);
    };
    const std::vector<double> cuts = {j0, j1, j0 - lk, j1 - lk};
    return quad::integrate_pieces(g, lo, hi, cuts, inner_tol).value;
  };
  // Cuts collide (kinks in the outer variables) at lk = lj and lj + lk = T.
  auto over_lk = [&](double lj) {
    std::vector<double> cuts;
    if (domain.finite()) cuts = {lj, *domain.horizon - lj};
    return quad::integrate_pieces([&](double lk) { return over_c(lj, lk); }, 0.0, upper, cuts, mid_tol).value;
  };
  std::vector<double> outer_cuts;
  if (domain.finite()) outer_cuts.push_back(0.5 * *domain.horizon);
  return quad::integrate_pieces(over_lk, 0.0, upper, outer_cuts, outer_tol);
}

std::string join_warning(std::string a, const std::string& b) {
  if (b.empty() || a.find(b) != std::string::npos) return a;
  return a.empty() ? b : a + "; " + b;
}

}  // namespace

ClusterTerm::ClusterTerm(PerfectMatching matching, ForestSelection forest)
    : matching_(std::move(matching)),
      forest_(validated(partition_join(matching_), std::move(forest))),
      partition_(partition_join(matching_)),
      coupling_(partition_, forest_),
      opened_(open_cycles(matching_, forest_, true)) {}

std::vector<ClusterTerm> enumerate_cluster_terms(int p, int p_max) {
  std::vector<ClusterTerm> terms;
  for_each_matching(p, [&](const PerfectMatching& m) {
    for_each_forest_selection(m, true, [&](const ForestSelection& f) { terms.emplace_back(m, f); }, p_max);
  }, p_max);
  return terms;
}

double term_integrand(const PerfectMatching& matching, const ForestSelection& forest, std::span<const double> t,
                      std::span<const double> v, const Kernel& kernel) {
  const int p = matching.order();
  if (static_cast<int>(t.size()) != 2 * p) throw ArgumentError("term_integrand needs 2p times");
  if (v.size() != forest.size()) throw ArgumentError("term_integrand needs one v per forest edge");
  const BlockPartition partition = partition_join(matching);
  const ForestSelection f = validated(partition, forest);

  for (int j = 0; j < p; ++j) {
    if (!(t[2 * j] < t[2 * j + 1])) return 0.0;
  }
  double value = 1.0;
  for (const Pair& e : f.micro_edges) {
    if (!intervals_overlap(t, e[0], e[1])) return 0.0;
    value = -value;
  }
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      if (f.contains(a, b) || !intervals_overlap(t, a, b)) continue;
      value *= 1.0 - interpolated_coupling(partition, f, v, a, b);
    }
  }
  for (int j = 0; j < p; ++j) value *= std::exp(-2.0 * (t[2 * j + 1] - t[2 * j]));
  for (int a = 0; a < 2 * p; ++a) {
    const int b = matching.partner(a);
    if (a < b) value *= kernel.h(t[a] - t[b]);
  }
  return value;
}

double term_integrand_v_integrated(const ClusterTerm& term, std::span<const double> t, const Kernel& kernel) {
  if (static_cast<int>(t.size()) != 2 * term.order()) throw ArgumentError("term_integrand needs 2p times");
  std::vector<std::uint8_t> ov;
  return term.sign() * term_weight(term, t, kernel, ov);
}

const char* method_name(Method method) {
  return method == Method::quadrature ? "quadrature" : "monte_carlo";
}

double term_mc_sample(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                      std::uint64_t seed, std::uint64_t index) {
  const int p = term.order();
  thread_local std::vector<double> t, len;
  thread_local std::vector<std::uint8_t> ov;
  t.assign(2 * p, 0.0);
  len.assign(p, 0.0);
  RandomStream rng(seed, index);

  len[0] = rng.exponential(2.0);
  t[0] = 0.0;
  t[1] = len[0];
  double w = std::ldexp(1.0, -p);
  for (const OpenedStructure::TreeEdge& e : term.opened().tree) {
    const double l = rng.exponential(2.0);
    if (e.from_forest) {
      const int A = e.parent, B = e.child;
      const double width = len[A] + l;
      const double x = t[2 * A] - l + rng.uniform() * width;
      t[2 * B] = x;
      t[2 * B + 1] = x + l;
      w *= width;
      len[B] = l;
    } else {
      const int a = e.link[0], b = e.link[1];
      const double tb = t[a] + kernel.sample_displacement(rng);
      t[b] = tb;
      t[b ^ 1] = (b % 2 == 0) ? tb + l : tb - l;
      w *= kernel.norm_l1();
      len[b / 2] = l;
    }
  }
  for (const Pair& d : term.opened().deleted_edges) w *= kernel.h(t[d[0]] - t[d[1]]);
  if (w == 0.0) return 0.0;
  ov.resize(static_cast<std::size_t>(p) * p);
  overlap_matrix(t, ov);
  w *= term.coupling().hardcore_weight_exact(ov);
  return w * window(domain, t);
}

CoefficientEstimate integrate_term(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                                   Method method, const Budget& budget) {
  if (domain.finite() && !(*domain.horizon > 0.0 && std::isfinite(*domain.horizon))) {
    throw ArgumentError("finite-T horizon must be positive and finite");
  }
  const int p = term.order();
  CoefficientEstimate est;
  est.p = p;
  est.finite_T = domain.horizon;
  est.method = method;

  if (method == Method::quadrature && p > 2) {
    est.method = Method::monte_carlo;
    est.warning = "quadrature unavailable for p > 2; used Monte Carlo";
  }
  if (est.method == Method::quadrature) {
    if (budget.pin_index < 0 || budget.pin_index >= 2 * p) throw ArgumentError("pin index out of range");
    if (!(budget.tolerance > 0.0)) throw ArgumentError("quadrature tolerance must be positive");
    const quad::Result r = p == 1 ? quadrature_p1(term, kernel, domain, budget)
                                  : quadrature_p2(term, kernel, domain, budget);
    est.value = term.sign() * r.value;
    est.quadrature_error = r.error;
    est.quadrature_tolerance = budget.tolerance;
    if (r.error > budget.tolerance * std::abs(r.value) && r.error > 1e-300) {
      est.warning = "quadrature tolerance not met";
    }
    return est;
  }

  if (budget.samples < 2) throw ArgumentError("Monte Carlo needs at least 2 samples");
  est.statistical_error = 0.0;
  if (kernel.is_zero()) return est;
  const MCEstimate mc = batched_mean(budget.samples, budget.seed, budget.workers, [&](std::uint64_t i) {
    return term_mc_sample(term, kernel, domain, budget.seed, i);
  });
  est.value = term.sign() * mc.value;
  est.statistical_error = mc.std_error;
  return est;
}

CoefficientEstimate coefficient(int p, const Kernel& kernel, const IntegrationDomain& domain, Method method,
                                const Budget& budget, std::vector<TermEstimate>* per_term, int p_max) {
  check_order(p, p_max);
  const std::vector<ClusterTerm> terms = enumerate_cluster_terms(p, p_max);
  std::vector<CoefficientEstimate> results(terms.size());

  if (method == Method::quadrature && p <= 2) {
    parallel_for(terms.size(), budget.workers, [&](std::size_t i) {
      results[i] = integrate_term(terms[i], kernel, domain, method, budget);
    });
  } else {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Budget b = budget;
      b.seed = derive_seed(budget.seed, i);
      results[i] = integrate_term(terms[i], kernel, domain, method, b);
    }
  }

  CoefficientEstimate total;
  total.p = p;
  total.finite_T = domain.horizon;
  total.method = method;
  NeumaierSum value;
  double var = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const CoefficientEstimate& r = results[i];
    value.add(r.value);
    var += r.statistical_error * r.statistical_error;
    total.quadrature_error += r.quadrature_error;
    total.quadrature_tolerance = std::max(total.quadrature_tolerance, r.quadrature_tolerance);
    total.method = r.method;
    total.warning = join_warning(total.warning, r.warning);
    if (per_term) {
      per_term->push_back({terms[i].matching().pairs(), terms[i].forest().micro_edges, terms[i].sign(), r});
    }
  }
  total.value = value.value();
  total.statistical_error = std::sqrt(var);
  return total;
}

CoefficientEstimate brute_force_coefficient(int p, double horizon, const Kernel& kernel, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers) {
  if (p < 1) throw ArgumentError("order must be at least 1");
  if (p > 3) throw ResourceError("brute-force coefficient is limited to p <= 3");
  if (!(horizon > 0.0 && std::isfinite(horizon))) throw ArgumentError("horizon must be positive and finite");
  if (samples < 2) throw ArgumentError("Monte Carlo needs at least 2 samples");

  CoefficientEstimate est;
  est.p = p;
  est.finite_T = horizon;
  est.method = Method::monte_carlo;
  if (kernel.is_zero()) return est;

  double scale = std::ldexp(std::pow(horizon, 2 * p), -p);
  for (int k = 2; k <= p; ++k) scale /= k;
  const std::uint64_t stream_seed = derive_seed(seed, 0xB2F7);
  const MCEstimate mc = batched_mean(samples, stream_seed, workers, [&](std::uint64_t i) {
    RandomStream rng(stream_seed, i);
    double t[6];
    const int n = 2 * p;
    for (int k = 0; k < n; ++k) t[k] = horizon * rng.uniform();
    double w = 1.0;
    for (int j = 0; j < p; ++j) w *= kernel.h(t[2 * j + 1] - t[2 * j]);
    std::sort(t, t + n);
    double gaps = 0.0;
    for (int j = 0; j < p; ++j) gaps += t[2 * j + 1] - t[2 * j];
    return scale * w * std::exp(-2.0 * gaps);
  });
  est.value = mc.value;
  est.statistical_error = mc.std_error;
  return est;
}

}  // namespace spinboson
