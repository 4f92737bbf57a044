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

#include "spinboson/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinboson/bkar.hpp"
#include "spinboson/combinatorics.hpp"
#include "spinboson/config.hpp"
#include "spinboson/error.hpp"
#include "spinboson/integrator.hpp"
#include "spinboson/jump_process.hpp"
#include "spinboson/kernel.hpp"
#include "spinboson/quadrature.hpp"
#include "spinboson/rng.hpp"
#include "spinboson/series.hpp"
#include "spinboson/stats.hpp"

namespace spinboson::cli {

using nlohmann::json;

namespace {

struct KernelOpts {
  std::optional<std::string> path;
  double tolerance = kDefaultKernelTolerance;

  void attach(CLI::App* app) {
    app->add_option("--kernel", path, "kernel config JSON (default: $SPINBOSON_KERNEL, else indicator cutoff 1)");
    app->add_option("--kernel-tolerance", tolerance, "kernel construction tolerance")->capture_default_str();
  }
  Kernel build() const { return Kernel::build(resolve_kernel_spec(path), tolerance); }
};

json pairs_json(const std::vector<Pair>& pairs) {
  json out = json::array();
  for (const Pair& p : pairs) out.push_back({p[0], p[1]});
  return out;
}

json estimate_json(const CoefficientEstimate& e) {
  json out;
  out["value"] = e.value;
  out["statistical_error"] = e.statistical_error;
  out["quadrature_tolerance"] = e.quadrature_tolerance;
  out["quadrature_error"] = e.quadrature_error;
  out["method"] = method_name(e.method);
  out["p"] = e.p;
  out["finite_T"] = e.finite_T ? json(*e.finite_T) : json(nullptr);
  out["warning"] = e.warning;
  return out;
}

json mc_json(const MCEstimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

std::string pairs_csv(const std::vector<Pair>& pairs) {
  std::string s;
  for (const Pair& p : pairs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(p[0]) + '-' + std::to_string(p[1]);
  }
  return s;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

Method parse_method(const std::string& m) { return m == "mc" ? Method::monte_carlo : Method::quadrature; }

// Lemma 1: random increasing tuples, MC moment vs closed form.
int verify_lemma1(std::uint64_t samples, std::uint64_t seed, int tuples, unsigned workers, std::ostream& out) {
  RandomStream rng(derive_seed(seed, 0x1E11), 0);
  json report = json::array();
  int within = 0;
  for (int i = 0; i < tuples; ++i) {
    const int q = 1 + static_cast<int>(rng.next_u64() % 6);
    std::vector<double> times(q);
    for (double& x : times) x = 3.0 * rng.uniform();
    std::sort(times.begin(), times.end());
    const double exact = moment_closed_form(times);
    const MCEstimate mc = estimate_moment_mc(times, samples, derive_seed(seed, i), workers);
    const double z = mc.std_error > 0 ? std::abs(mc.value - exact) / mc.std_error : (mc.value == exact ? 0.0 : 1e300);
    const bool ok = z <= 3.0;
    within += ok;
    report.push_back({{"q", q}, {"times", times}, {"exact", exact}, {"mc", mc.value}, {"std_error", mc.std_error},
                      {"pass", ok}});
  }
  const int needed = (tuples * 9 + 9) / 10;
  const bool pass = within >= needed;
  emit(out, {{"check", "lemma1"}, {"within_3_sigma", within}, {"required", needed}, {"pass", pass}, {"tuples", report}});
  return pass ? kExitOk : kExitFailure;
}

int verify_bkar(int configs, std::uint64_t seed, unsigned workers, std::ostream& out) {
  json report = json::array();
  bool pass = true;
  for (int p : {2, 3}) {
    const std::uint64_t key = derive_seed(seed, 0xB4A0 + p);
    const auto matchings = enumerate_matchings(p);
    // Configuration c uses stream (key, c) and is checked against every matching.
    std::vector<double> residual(configs, 0.0);
    parallel_for(configs, workers, [&](std::size_t c) {
      RandomStream rng(key, c);
      TimeConfiguration cfg;
      cfg.t.resize(2 * p);
      for (int j = 0; j < p; ++j) {
        const double a = 4.0 * rng.uniform(), l = 1.5 * rng.uniform();
        cfg.t[2 * j] = a;
        cfg.t[2 * j + 1] = a + l;
      }
      for (const auto& m : matchings) residual[c] = std::max(residual[c], verify_bkar_identity(m, cfg));
    });
    const double worst = configs > 0 ? *std::max_element(residual.begin(), residual.end()) : 0.0;
    const bool ok = worst < 1e-8;
    pass = pass && ok;
    report.push_back({{"p", p}, {"configurations", configs}, {"max_residual", worst}, {"pass", ok}});
  }
  // Analytic p = 2 cases under the base matching: disjoint gives 1 = 1,
  // overlapping gives 0 = 0.
  const PerfectMatching base = PerfectMatching::base(2);
  const std::vector<double> disjoint = {0.0, 1.0, 2.0, 3.0}, overlapping = {0.0, 2.0, 1.0, 3.0};
  const double rd = bkar_rhs(base, disjoint), ro = bkar_rhs(base, overlapping);
  const bool analytic = bkar_lhs(disjoint) == 1.0 && rd == 1.0 && bkar_lhs(overlapping) == 0.0 && ro == 0.0;
  pass = pass && analytic;
  emit(out, {{"check", "bkar"}, {"suites", report}, {"disjoint_rhs", rd}, {"overlapping_rhs", ro},
             {"analytic_pass", analytic}, {"pass", pass}});
  return pass ? kExitOk : kExitFailure;
}

int verify_resummation(const Kernel& kernel, const std::vector<double>& horizons, std::uint64_t samples,
                       std::uint64_t seed, unsigned workers, std::ostream& out) {
  json report = json::array();
  bool pass = true;
  for (double T : horizons) {
    Budget budget;
    budget.workers = workers;
    const auto c1 = coefficient(1, kernel, IntegrationDomain::finite_T(T), Method::quadrature, budget);
    const auto c2 = coefficient(2, kernel, IntegrationDomain::finite_T(T), Method::quadrature, budget);
    // Direct 2-D quadrature of (1/2) int int h(t - s) e^{-2|t - s|} on [0,T]^2.
    const auto direct = quad::integrate([&](double t) {
      auto g = [&](double s) { return 0.5 * kernel.h(t - s) * std::exp(-2.0 * std::abs(t - s)); };
      return quad::integrate_pieces(g, 0.0, T, {t}, 1e-10).value;
    }, 0.0, T, 1e-9);
    const double rel = std::abs(c1.value - direct.value) / std::abs(direct.value);
    const bool quad_ok = rel <= 1e-4;
    pass = pass && quad_ok;
    const double predicted[2] = {c1.value, c2.value / 2.0 + c1.value * c1.value / 2.0};
    const double predicted_err[2] = {c1.quadrature_error, c2.quadrature_error / 2.0 + std::abs(c1.value) * c1.quadrature_error};
    for (int p = 1; p <= 2; ++p) {
      const auto bf = brute_force_coefficient(p, T, kernel, samples, derive_seed(seed, 10 * p + static_cast<int>(T)), workers);
      const double sigma = std::hypot(bf.statistical_error, predicted_err[p - 1]);
      const double dev = std::abs(bf.value - predicted[p - 1]);
      const bool ok = dev <= 3.0 * sigma;
      pass = pass && ok;
      report.push_back({{"T", T}, {"p", p}, {"brute_force", bf.value}, {"std_error", bf.statistical_error},
                        {"cluster", predicted[p - 1]}, {"deviation_sigma", sigma > 0 ? dev / sigma : 0.0}, {"pass", ok}});
    }
    report.push_back({{"T", T}, {"C1_quadrature", c1.value}, {"C1_direct", direct.value}, {"relative", rel},
                      {"pass", quad_ok}});
  }
  emit(out, {{"check", "resummation"}, {"results", report}, {"pass", pass}});
  return pass ? kExitOk : kExitFailure;
}

std::uint64_t double_factorial_odd(int p) {
  std::uint64_t r = 1;
  for (int k = 2 * p - 1; k > 1; k -= 2) r *= k;
  return r;
}

int verify_counts(int p_max, std::ostream& out) {
  json report;
  bool pass = true;
  json matchings = json::array();
  for (int p = 1; p <= p_max; ++p) {
    const auto all = enumerate_matchings(p, p_max);
    bool even = true, consistent = true;
    std::uint64_t connecting = 0;
    for (const auto& m : all) {
      const BlockPartition part = partition_join(m);
      for (const auto& s : part.point_supports) even = even && s.size() % 2 == 0;
      std::uint64_t filtered = 0, direct = 0;
      for_each_forest_selection(m, false, [&](const ForestSelection& f) { filtered += is_connecting(m, f); }, p_max);
      for_each_forest_selection(m, true, [&](const ForestSelection&) { ++direct; }, p_max);
      consistent = consistent && filtered == direct;
      connecting += direct;
    }
    const bool ok = all.size() == double_factorial_odd(p) && matching_count(p) == all.size() && even && consistent;
    pass = pass && ok;
    matchings.push_back({{"p", p}, {"matchings", all.size()}, {"connecting_terms", connecting}, {"even_supports", even},
                         {"connecting_consistent", consistent}, {"pass", ok}});
  }
  report["matchings"] = matchings;

  json trees = json::array();
  for (int p = 1; p <= p_max; ++p) {
    std::uint64_t worst = 0;
    for (const auto& tree : enumerate_labeled_trees(p)) worst = std::max(worst, count_compatible_pairs(tree, p, p_max));
    const std::uint64_t limit = std::uint64_t{1} << (2 * p);
    const bool ok = worst < limit;
    pass = pass && ok;
    trees.push_back({{"p", p}, {"max_compatible_pairs", worst}, {"bound", limit}, {"pass", ok}});
  }
  report["compatible_pairs"] = trees;

  json cayley = json::array();
  for (int n = 2; n <= 6; ++n) {
    std::map<std::vector<int>, std::uint64_t> by_degree;
    const auto all = enumerate_labeled_trees(n);
    for (const auto& tree : all) {
      std::vector<int> deg(n, 0);
      for (const Pair& e : tree) ++deg[e[0]], ++deg[e[1]];
      ++by_degree[deg];
    }
    bool ok = true;
    for (const auto& [deg, count] : by_degree) ok = ok && cayley_degree_count(deg) == count;
    std::uint64_t total = 1;
    for (int k = 0; k < n - 2; ++k) total *= n;
    ok = ok && all.size() == total;
    pass = pass && ok;
    cayley.push_back({{"n", n}, {"trees", all.size()}, {"degree_sequences", by_degree.size()}, {"pass", ok}});
  }
  report["cayley"] = cayley;
  report["check"] = "counts";
  report["pass"] = pass;
  emit(out, report);
  return pass ? kExitOk : kExitFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster-expansion engine for the spin-boson ground-state energy", "spinboson"};
  app.require_subcommand(1);

  // norms
  KernelOpts norms_k;
  auto* norms = app.add_subcommand("norms", "kernel norms ||h||_inf and ||h||_1");
  norms_k.attach(norms);

  // radius
  KernelOpts radius_k;
  double radius_gamma = kDefaultGamma;
  auto* radius = app.add_subcommand("radius", "radius of convergence certificate");
  radius_k.attach(radius);
  radius->add_option("--gamma", radius_gamma, "gamma in (0,1)")->capture_default_str();

  // simulate
  KernelOpts sim_k;
  double sim_alpha = 0.0, sim_T = 0.0;
  std::uint64_t sim_samples = 0, sim_seed = 0;
  unsigned sim_workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of Z(alpha, T)");
  sim_k.attach(simulate);
  simulate->add_option("--alpha", sim_alpha, "coupling alpha")->required();
  simulate->add_option("--horizon", sim_T, "time horizon T")->required();
  simulate->add_option("--samples", sim_samples, "number of paths")->required();
  simulate->add_option("--seed", sim_seed, "random seed")->required();
  simulate->add_option("--workers", sim_workers, "worker threads")->capture_default_str();

  // coefficient
  KernelOpts coef_k;
  int coef_p = 1;
  std::optional<double> coef_T;
  std::string coef_method = "quad", coef_output = "json";
  std::uint64_t coef_budget = 100'000;
  std::optional<std::uint64_t> coef_seed;
  double coef_tol = 1e-6;
  int coef_pin = 0, coef_pmax = kDefaultPMax;
  bool coef_per_term = false;
  unsigned coef_workers = 1;
  auto* coef = app.add_subcommand("coefficient", "pinned c_p or finite-T C_p(T)");
  coef_k.attach(coef);
  coef->add_option("--p", coef_p, "order p")->required();
  coef->add_option("--finite-T", coef_T, "finite horizon T (default: pinned, infinite volume)");
  coef->add_option("--method", coef_method, "quad or mc")->check(CLI::IsMember({"quad", "mc"}))->capture_default_str();
  coef->add_option("--budget", coef_budget, "Monte Carlo samples per term")->capture_default_str();
  coef->add_option("--seed", coef_seed, "random seed (required for mc)");
  coef->add_option("--tolerance", coef_tol, "quadrature relative tolerance")->capture_default_str();
  coef->add_option("--pin-index", coef_pin, "point fixed at 0 in pinned quadrature")->capture_default_str();
  coef->add_option("--pmax", coef_pmax, "order cap (at most 6)")->capture_default_str();
  coef->add_flag("--per-term", coef_per_term, "include every (P, F) term");
  coef->add_option("--output", coef_output, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  coef->add_option("--workers", coef_workers, "worker threads")->capture_default_str();

  // energy
  KernelOpts en_k;
  std::optional<double> en_lambda, en_alpha;
  int en_pmax = 2;
  std::string en_method = "quad", en_gamma = "0.5";
  std::uint64_t en_budget = 100'000;
  std::optional<std::uint64_t> en_seed;
  double en_tol = 1e-6;
  unsigned en_workers = 1;
  auto* energy_cmd = app.add_subcommand("energy", "truncated energy series with tail bound");
  en_k.attach(energy_cmd);
  auto* lam = energy_cmd->add_option("--lambda", en_lambda, "coupling lambda (alpha = (lambda/4pi)^2)");
  auto* alp = energy_cmd->add_option("--alpha", en_alpha, "coupling alpha");
  lam->excludes(alp);
  alp->excludes(lam);
  energy_cmd->add_option("--pmax", en_pmax, "truncation order")->capture_default_str();
  energy_cmd->add_option("--method", en_method, "quad or mc")->check(CLI::IsMember({"quad", "mc"}))->capture_default_str();
  energy_cmd->add_option("--budget", en_budget, "Monte Carlo samples per term")->capture_default_str();
  energy_cmd->add_option("--seed", en_seed, "random seed (required for mc or pmax > 2)");
  energy_cmd->add_option("--tolerance", en_tol, "quadrature relative tolerance")->capture_default_str();
  energy_cmd->add_option("--gamma", en_gamma, "gamma in (0,1), or 'auto' for the best grid value")->capture_default_str();
  energy_cmd->add_option("--workers", en_workers, "worker threads")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "verification suites; exit code 1 on failure");
  verify->require_subcommand(1);
  std::uint64_t l1_samples = 1'000'000, l1_seed = 7;
  int l1_tuples = 20;
  unsigned l1_workers = 1;
  auto* v_lemma1 = verify->add_subcommand("lemma1", "moment formula vs simulated paths");
  v_lemma1->add_option("--samples", l1_samples, "paths per tuple")->capture_default_str();
  v_lemma1->add_option("--seed", l1_seed, "random seed")->capture_default_str();
  v_lemma1->add_option("--tuples", l1_tuples, "number of random tuples")->check(CLI::PositiveNumber)->capture_default_str();
  v_lemma1->add_option("--workers", l1_workers, "worker threads")->capture_default_str();
  int bk_configs = 100;
  std::uint64_t bk_seed = 11;
  unsigned bk_workers = 1;
  auto* v_bkar = verify->add_subcommand("bkar", "forest formula vs direct hardcore product");
  v_bkar->add_option("--configs", bk_configs, "random configurations per p")->check(CLI::NonNegativeNumber)->capture_default_str();
  v_bkar->add_option("--seed", bk_seed, "random seed")->capture_default_str();
  v_bkar->add_option("--workers", bk_workers, "worker threads")->capture_default_str();
  KernelOpts rs_k;
  std::vector<double> rs_T = {2.0, 5.0};
  std::uint64_t rs_samples = 2'000'000, rs_seed = 13;
  unsigned rs_workers = 1;
  auto* v_resum = verify->add_subcommand("resummation", "raw Taylor coefficients vs exp of cluster coefficients");
  rs_k.attach(v_resum);
  v_resum->add_option("--horizon", rs_T, "horizons T")->capture_default_str();
  v_resum->add_option("--samples", rs_samples, "brute-force samples")->capture_default_str();
  v_resum->add_option("--seed", rs_seed, "random seed")->capture_default_str();
  v_resum->add_option("--workers", rs_workers, "worker threads")->capture_default_str();
  int vc_pmax = kDefaultPMax;
  auto* v_counts = verify->add_subcommand("counts", "combinatorial census");
  v_counts->add_option("--pmax", vc_pmax, "largest order")->capture_default_str();

  // counts
  int cnt_p = 2;
  auto* counts = app.add_subcommand("counts", "enumerate the (P, F) terms of one order");
  counts->add_option("--p", cnt_p, "order p (at most 6)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (*norms) {
      const Kernel k = norms_k.build();
      emit(out, {{"kernel", kernel_spec_to_json(k.spec())}, {"norm_inf", k.norm_inf()}, {"norm_l1", k.norm_l1()}});
    } else if (*radius) {
      const Kernel k = radius_k.build();
      const RadiusBound r = radius_bound(k);
      json doc = {{"kernel", kernel_spec_to_json(k.spec())}, {"unbounded", r.unbounded}, {"gamma", radius_gamma},
                  {"delta", delta_gamma(radius_gamma)}, {"K", certificate_K(k, radius_gamma)}};
      doc["R_min"] = r.unbounded ? json("unbounded") : json(r.r_min);
      doc["lambda_radius"] = r.unbounded ? json("unbounded") : json(r.lambda_radius);
      emit(out, doc);
    } else if (*simulate) {
      const Kernel k = sim_k.build();
      const MCEstimate z = estimate_Z(sim_alpha, sim_T, k, sim_samples, sim_seed, sim_workers);
      json doc = mc_json(z);
      doc["alpha"] = sim_alpha;
      doc["horizon"] = sim_T;
      doc["log_value"] = std::log(z.value);
      doc["log_std_error"] = z.std_error / z.value;
      emit(out, doc);
    } else if (*coef) {
      const Method method = parse_method(coef_method);
      if (method == Method::monte_carlo && !coef_seed) throw ArgumentError("--seed is required with --method mc");
      if (coef_p > 2 && !coef_seed) {
        throw ArgumentError("--seed is required for p > 2 (Monte Carlo fallback)");
      }
      const Kernel k = coef_k.build();
      Budget b;
      b.samples = coef_budget;
      b.seed = coef_seed.value_or(0);
      b.tolerance = coef_tol;
      b.workers = coef_workers;
      b.pin_index = coef_pin;
      const IntegrationDomain domain = coef_T ? IntegrationDomain::finite_T(*coef_T) : IntegrationDomain::pinned();
      std::vector<TermEstimate> terms;
      const CoefficientEstimate total =
          coefficient(coef_p, k, domain, method, b, coef_per_term || coef_output == "csv" ? &terms : nullptr, coef_pmax);
      if (coef_output == "csv") {
        out << "index,matching,forest,sign,value,statistical_error,quadrature_error,method\n";
        for (std::size_t i = 0; i < terms.size(); ++i) {
          const auto& t = terms[i];
          out << i << ',' << pairs_csv(t.matching) << ',' << pairs_csv(t.forest) << ',' << t.sign << ','
              << fmt(t.estimate.value) << ',' << fmt(t.estimate.statistical_error) << ','
              << fmt(t.estimate.quadrature_error) << ',' << method_name(t.estimate.method) << '\n';
        }
      } else {
        json doc = estimate_json(total);
        doc["seed"] = b.seed;
        if (coef_per_term) {
          json arr = json::array();
          for (const auto& t : terms) {
            arr.push_back({{"matching", pairs_json(t.matching)}, {"forest", pairs_json(t.forest)}, {"sign", t.sign},
                           {"estimate", estimate_json(t.estimate)}});
          }
          doc["terms"] = arr;
        }
        emit(out, doc);
      }
    } else if (*energy_cmd) {
      if (!en_lambda && !en_alpha) throw ArgumentError("one of --lambda or --alpha is required");
      const Method method = parse_method(en_method);
      if ((method == Method::monte_carlo || en_pmax > 2) && !en_seed) {
        throw ArgumentError("--seed is required for Monte Carlo coefficients");
      }
      double gamma = kDefaultGamma;
      if (en_gamma == "auto") {
        gamma = best_grid_gamma();
      } else {
        try {
          gamma = std::stod(en_gamma);
        } catch (const std::exception&) {
          throw ArgumentError("--gamma must be a number or 'auto'");
        }
      }
      const Kernel k = en_k.build();
      Budget b;
      b.samples = en_budget;
      b.seed = en_seed.value_or(0);
      b.tolerance = en_tol;
      b.workers = en_workers;
      const SeriesResult r = en_lambda ? energy_from_lambda(*en_lambda, en_pmax, k, method, b, gamma)
                                       : energy(*en_alpha, en_pmax, k, method, b, gamma);
      json coeffs = json::array();
      for (const auto& c : r.coefficients) coeffs.push_back(estimate_json(c));
      emit(out, {{"alpha", r.alpha}, {"lambda", r.lambda ? json(*r.lambda) : json(nullptr)}, {"coefficients", coeffs},
                 {"energy", r.energy}, {"numerical_error", r.numerical_error},
                 {"tail_bound", r.tail_bound ? json(*r.tail_bound) : json(nullptr)}, {"certified", r.certified},
                 {"radius_bound", r.radius_bound}, {"K", r.K}, {"gamma", r.gamma}, {"delta", r.delta},
                 {"note", r.note}, {"warning", r.warning}});
    } else if (*v_lemma1) {
      return verify_lemma1(l1_samples, l1_seed, l1_tuples, l1_workers, out);
    } else if (*v_bkar) {
      return verify_bkar(bk_configs, bk_seed, bk_workers, out);
    } else if (*v_resum) {
      return verify_resummation(rs_k.build(), rs_T, rs_samples, rs_seed, rs_workers, out);
    } else if (*v_counts) {
      return verify_counts(vc_pmax, out);
    } else if (*counts) {
      check_order(cnt_p, kHardPMax);
      json rows = json::array();
      std::uint64_t total_terms = 0;
      for (const auto& m : enumerate_matchings(cnt_p, kHardPMax)) {
        const BlockPartition part = partition_join(m);
        json forests = json::array();
        for_each_forest_selection(m, true, [&](const ForestSelection& f) { forests.push_back(pairs_json(f.micro_edges)); },
                                  kHardPMax);
        total_terms += forests.size();
        rows.push_back({{"matching", pairs_json(m.pairs())}, {"blocks", part.blocks}, {"connecting_forests", forests}});
      }
      emit(out, {{"p", cnt_p}, {"matchings", matching_count(cnt_p)}, {"connecting_terms", total_terms}, {"terms", rows}});
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace spinboson::cli
