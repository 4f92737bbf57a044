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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinboson/combinatorics.hpp"
#include "spinboson/kernel.hpp"

namespace spinboson {

// One connecting pair (P, F) together with everything derived from it.
class ClusterTerm {
 public:
  // Throws StructureError when (P, F) is not connecting or F is invalid.
  ClusterTerm(PerfectMatching matching, ForestSelection forest);

  int order() const { return matching_.order(); }
  const PerfectMatching& matching() const { return matching_; }
  const ForestSelection& forest() const { return forest_; }
  const BlockPartition& partition() const { return partition_; }
  const CouplingStructure& coupling() const { return coupling_; }
  const OpenedStructure& opened() const { return opened_; }
  // (-1)^{|F|}
  int sign() const { return forest_.size() % 2 ? -1 : 1; }

 private:
  PerfectMatching matching_;
  ForestSelection forest_;
  BlockPartition partition_;
  CouplingStructure coupling_;
  OpenedStructure opened_;
};

// All connecting (P, F) of order p, matchings in enumeration order.
std::vector<ClusterTerm> enumerate_cluster_terms(int p, int p_max = kDefaultPMax);

// The integrand for fixed times and interpolation parameters, signed. v has
// one entry per forest edge (in micro_edges order).
double term_integrand(const PerfectMatching& matching, const ForestSelection& forest, std::span<const double> t,
                      std::span<const double> v, const Kernel& kernel);

// Same with the v-integral done exactly. Signed.
double term_integrand_v_integrated(const ClusterTerm& term, std::span<const double> t, const Kernel& kernel);

struct IntegrationDomain {
  std::optional<double> horizon;  // empty: pinned (point pin_index at 0, infinite volume)

  static IntegrationDomain pinned() { return {}; }
  static IntegrationDomain finite_T(double horizon) { return {horizon}; }
  bool finite() const { return horizon.has_value(); }
};

enum class Method { quadrature, monte_carlo };

const char* method_name(Method method);

struct Budget {
  std::uint64_t samples = 100'000;  // per term, Monte Carlo
  std::uint64_t seed = 0;
  double tolerance = 1e-6;          // relative, quadrature
  unsigned workers = 1;
  int pin_index = 0;                // point fixed at time 0 (quadrature, pinned mode)
};

struct CoefficientEstimate {
  double value = 0.0;
  double statistical_error = 0.0;
  double quadrature_tolerance = 0.0;  // requested relative tolerance; 0 for Monte Carlo
  double quadrature_error = 0.0;      // absolute error estimate reported by the integrator
  Method method = Method::quadrature;
  int p = 0;
  std::optional<double> finite_T;
  std::string warning;  // empty unless a tolerance was not met or a fallback was used
};

// Quadrature is available for p <= 2. For larger p the quadrature method
// falls back to Monte Carlo and says so in the warning.
CoefficientEstimate integrate_term(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                                   Method method, const Budget& budget);

// Single importance-sampled draw for the term (positive weight, sign not
// applied). Sample index i uses stream (seed, i).
double term_mc_sample(const ClusterTerm& term, const Kernel& kernel, const IntegrationDomain& domain,
                      std::uint64_t seed, std::uint64_t index);

struct TermEstimate {
  std::vector<Pair> matching;
  std::vector<Pair> forest;
  int sign = 1;
  CoefficientEstimate estimate;
};

// Pinned: c_p. Finite T: the coefficient C_p(T) of alpha^p / p! in log Z.
// Per-term errors combine in quadrature. Term i draws its Monte Carlo stream
// from derive_seed(budget.seed, i).
CoefficientEstimate coefficient(int p, const Kernel& kernel, const IntegrationDomain& domain, Method method,
                                const Budget& budget, std::vector<TermEstimate>* per_term = nullptr,
                                int p_max = kDefaultPMax);

// Order-alpha^p Taylor coefficient of Z(alpha, T) straight from the raw
// expansion with Lemma 1's moment: uniform times on [0,T]^{2p}. p <= 3.
CoefficientEstimate brute_force_coefficient(int p, double horizon, const Kernel& kernel, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers = 1);

}  // namespace spinboson
