#pragma once

// Closed-form-versus-numeric identity suite. Every check is deterministic
// given the seed; random configurations come from Rng(seed, stream) with a
// fixed stream per check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wlpdisc/bounds.hpp"
#include "wlpdisc/core.hpp"
#include "wlpdisc/discrepancy.hpp"
#include "wlpdisc/gauss_legendre.hpp"
#include "wlpdisc/parallel.hpp"
#include "wlpdisc/poly2.hpp"
#include "wlpdisc/random.hpp"
#include "wlpdisc/sobolev.hpp"

namespace wlpdisc {

enum class CheckStatus { Pass, Fail };

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::Fail;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  std::string grid;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  double tau_perturbation = 0.0;  ///< added to tau_p in thm2-consistency (mutation testing)
  unsigned threads = 0;
};

/// Formulas the suite must cover, keyed by a stable name.
[[nodiscard]] inline const std::vector<std::string>& covered_formulas() {
  static const std::vector<std::string> f{
      "weighted-lp-discrepancy", "initial-discrepancy", "generalized-discrepancy", "subset-factorization",
      "anchored-sobolev-norm",   "worst-case-function", "reflected-point-set",     "split-point",
      "split-functions",         "alpha-beta",          "general-lower-bound",     "tau",
      "inverse-upper-bound",     "poly2-norm",          "rho",                     "tractability-conditions"};
  return f;
}

/// check id -> formulas it exercises.
[[nodiscard]] inline const std::map<std::string, std::vector<std::string>>& coverage_manifest() {
  static const std::map<std::string, std::vector<std::string>> m{
      {"classifier-chain", {"tractability-conditions"}},
      {"empty-rule-identity", {"generalized-discrepancy", "initial-discrepancy"}},
      {"eq-initdisc", {"initial-discrepancy", "weighted-lp-discrepancy"}},
      {"eq-wcfct-intnor", {"worst-case-function", "anchored-sobolev-norm"}},
      {"expansion-oracle", {"weighted-lp-discrepancy"}},
      {"poly2-alpha-bound", {"poly2-norm", "rho"}},
      {"poly2-beta", {"poly2-norm"}},
      {"reflection-p2", {"reflected-point-set", "weighted-lp-discrepancy"}},
      {"rho-positive", {"rho"}},
      {"split-integrals", {"split-functions", "split-point"}},
      {"split-norms-coincide", {"split-functions", "split-point", "anchored-sobolev-norm"}},
      {"split-sum", {"split-functions"}},
      {"subset-factorization", {"subset-factorization"}},
      {"tau-positive", {"tau"}},
      {"thm2-alpha", {"alpha-beta", "anchored-sobolev-norm"}},
      {"thm2-beta", {"alpha-beta"}},
      {"thm2-consistency", {"general-lower-bound", "tau", "alpha-beta"}},
      {"upper-bound-form", {"inverse-upper-bound"}},
  };
  return m;
}

namespace detail {

/// Tracks max |err| and reports status against the tolerance.
class ErrorMax {
 public:
  void add(double err) {
    if (std::isnan(err)) err = kInfinity;
    max_ = std::max(max_, err);
  }
  [[nodiscard]] CheckResult result(std::string id, double tol, std::string grid) const {
    return {std::move(id), max_ <= tol ? CheckStatus::Pass : CheckStatus::Fail, max_, tol, std::move(grid)};
  }

 private:
  double max_ = 0.0;
};

[[nodiscard]] inline PointSet random_point_set(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<double> x(n * d);
  for (double& v : x) v = rng.uniform();
  return PointSet(d, std::move(x));
}

[[nodiscard]] inline std::vector<double> random_gammas(Rng& rng, std::size_t d) {
  std::vector<double> g(d);
  for (double& v : g) v = 0.05 + 0.95 * rng.uniform();
  return g;
}

[[nodiscard]] inline std::size_t random_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

inline CheckResult check_eq_initdisc() {
  ErrorMax e;
  const std::vector<double> gam{1.0, 0.5, 0.25};
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const std::span<const double> g(gam.data(), d);
      const auto hp = HolderPair::from_p(p);
      e.add(std::abs(lp_quadrature(QuadRule::empty(d), g, hp, kDefaultQuadratureOrder, 1).value -
                     initial_discrepancy(g, hp)));
    }
  }
  return e.result("eq-initdisc", 1e-8, "quadrature of the empty rule; p in {1.5,2,3,4}, d in {1,2,3}, gamma=(1,1/2,1/4)");
}

inline CheckResult check_empty_rule_identity() {
  ErrorMax e;
  const std::vector<double> gam{1.0, 0.5, 0.25, 0.125};
  for (double p : {2.0, 4.0, 6.0}) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const std::span<const double> g(gam.data(), d);
      e.add(std::abs(generalized_exact_even_p(QuadRule::empty(d), g, p, 1).value -
                     initial_discrepancy(g, HolderPair::from_p(p))));
    }
  }
  return e.result("empty-rule-identity", 1e-12, "exact expansion of the empty rule; p in {2,4,6}, d <= 4");
}

inline CheckResult check_expansion_oracle(std::uint64_t seed) {
  Rng rng(seed, 1);
  ErrorMax e;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = random_int(rng, 1, 8);
    const std::size_t d = random_int(rng, 1, 3);
    const double p = trial % 2 == 0 ? 2.0 : 4.0;
    const auto pts = random_point_set(rng, n, d);
    const auto g = random_gammas(rng, d);
    const double exact = exact_even_p(pts, g, p, 1).value;
    const double quad = lp_quadrature(QuadRule::qmc(pts), g, HolderPair::from_p(p), kDefaultQuadratureOrder, 1).value;
    e.add(std::abs(exact - quad));
  }
  return e.result("expansion-oracle", 1e-8, "50 random (P, gamma), n <= 8, d <= 3, p in {2,4}; expansion vs quadrature");
}

inline CheckResult check_reflection(std::uint64_t seed) {
  Rng rng(seed, 2);
  ErrorMax e;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = random_int(rng, 1, 16);
    const std::size_t d = random_int(rng, 1, 4);
    const auto pts = random_point_set(rng, n, d);
    const auto g = random_gammas(rng, d);
    e.add(std::abs(qmc_worst_case_error_p2(pts, g) - exact_even_p(reflect(pts), g, 2.0, 1).value));
  }
  return e.result("reflection-p2", 1e-12, "100 random P, d <= 4, n <= 16; kernel error vs discrepancy of 1 - P");
}

inline CheckResult check_subset_factorization(std::uint64_t seed) {
  Rng rng(seed, 3);
  ErrorMax e;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = random_int(rng, 1, 10);
    const auto g = random_gammas(rng, d);
    std::vector<double> f(d);
    for (double& v : f) v = 2.0 * rng.uniform() - 0.5;
    const double expo = 0.5 + 2.0 * rng.uniform();
    double brute = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
      double t = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (mask >> j & 1U) t *= std::pow(g[j], expo) * f[j];
      }
      brute += t;
    }
    const double fast = subset_weighted_product(g, expo, f);
    e.add(std::abs(fast - brute) / std::max(1.0, std::abs(brute)));
  }
  return e.result("subset-factorization", 1e-12, "40 random draws, d <= 10; product form vs subset enumeration (relative)");
}

inline const std::vector<double> kSobolevGammas{1.0, 0.5, 0.25, 0.1};

inline CheckResult check_wcfct() {
  ErrorMax e;
  const GaussLegendre gl(32);
  for (double p : {2.0, 3.0, 4.0}) {
    const auto hp = HolderPair::from_p(p);
    for (double g : kSobolevGammas) {
      const auto h = h_worst(g, p);
      e.add(std::abs(h.integral_abs_pow(1.0, gl) - h_worst_integral(g, p)));
      e.add(std::abs(norm_1d(h, g, hp) - h_worst_norm(g, hp)));
    }
  }
  return e.result("eq-wcfct-intnor", 1e-10, "p in {2,3,4}, gamma in {1,1/2,1/4,1/10}; numeric integral and norm of h");
}

inline CheckResult check_split_sum() {
  ErrorMax e;
  for (double p : {2.0, 3.0, 4.0, 5.0, 6.0}) {
    const auto s = fooling_split(p);
    const auto sum = s.h11 + s.h120 + s.h121;
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      e.add(std::abs(sum(x) - (1.0 - std::pow(1.0 - x, p))));
    }
  }
  return e.result("split-sum", 1e-14, "p in {2..6}, 1001 points; h11 + h120 + h121 = 1 - (1-x)^p");
}

inline CheckResult check_split_integrals() {
  ErrorMax e;
  for (double p : {2.0, 3.0, 4.0}) {
    const auto s = fooling_split(p);
    const double base = p / (2.0 * (p + 1.0));
    e.add(std::abs((s.h11 + s.h120).integral() - base));
    e.add(std::abs((s.h11 + s.h121).integral() - (base + split_constant(p) / 4.0)));
  }
  return e.result("split-integrals", 1e-12, "p in {2,3,4}; integrals of h11 + h120 and h11 + h121");
}

inline CheckResult check_split_norms() {
  ErrorMax e;
  for (double p : {2.0, 3.0, 4.0}) {
    const auto hp = HolderPair::from_p(p);
    const double a = split_point(p);
    for (double g : {1.0, 0.25}) {
      const double n0 = std::pow(norm_1d(s_function(g, p, a), g, hp), hp.q());
      const double n1 = std::pow(norm_1d(s_function(g, p, std::nextafter(a, 2.0)), g, hp), hp.q());
      e.add(std::abs(n0 - n1));
    }
  }
  return e.result("split-norms-coincide", 1e-10,
                  "p in {2,3,4}, gamma in {1,1/4}; q-th power norms of both fooling branches at the split point");
}

inline CheckResult check_alpha(bool beta_side) {
  ErrorMax e;
  for (double p : {2.0, 3.0, 4.0}) {
    const auto hp = HolderPair::from_p(p);
    const auto nodes = alpha_beta_nodes(p);
    for (double g : {1.0, 0.25}) {
      const auto closed = alpha_beta(g, hp);
      const auto num = numeric_alpha_beta(g, hp, nodes);
      if (beta_side) {
        e.add(std::abs(closed.beta - num.beta));
      } else {
        e.add(std::abs(std::pow(closed.alpha, hp.q()) - num.alpha_q));
      }
    }
  }
  return beta_side ? e.result("thm2-beta", 1e-8, "p in {2,3,4}, gamma in {1,1/4}; closed beta vs max over 259 nodes")
                   : e.result("thm2-alpha", 1e-8, "p in {2,3,4}, gamma in {1,1/4}; closed alpha^q vs max over 259 nodes");
}

inline CheckResult check_tau_positive() {
  ErrorMax e;
  for (int i = 0; i < 200; ++i) {
    const double p = 1.01 * std::pow(64.0 / 1.01, i / 199.0);
    e.add(std::max(0.0, -tau(p)));
    if (!(tau(p) > 0.0)) e.add(kInfinity);
  }
  return e.result("tau-positive", 0.0, "200 log-spaced p in [1.01, 64]; error = negative part of tau_p");
}

inline CheckResult check_rho_positive() {
  ErrorMax e;
  for (int i = 0; i < 100; ++i) {
    const double q = 1.05 + (16.0 - 1.05) * i / 99.0;
    const double r = rho(q, 0.5 * u_threshold(q));
    if (!(r > 0.0)) e.add(std::max(-r, 1e-300) + 1.0);
  }
  return e.result("rho-positive", 0.0, "100 equispaced q in [1.05, 16] at u = threshold/2");
}

inline CheckResult check_thm2_consistency(std::uint64_t seed, double tau_shift) {
  Rng rng(seed, 4);
  ErrorMax e;
  auto one = [&](const std::vector<double>& g, double p, double eps) {
    const auto hp = HolderPair::from_p(p);
    const double general = lower_bound_complexity(sobolev_ingredients(g, hp), eps);
    const double closed = lower_bound_inverse(g, hp, eps, tau_shift);
    e.add(std::max(0.0, closed - general));
  };
  for (double p : {2.0, 3.0, 4.0, 6.0}) {
    one({1.0}, p, 0.25);
    one({1.0, 1.0, 1.0}, p, 0.1);
  }
  for (int trial = 0; trial < 40; ++trial) {
    const double p = 1.2 + 6.0 * rng.uniform();
    const std::size_t d = random_int(rng, 1, 8);
    one(random_gammas(rng, d), p, 0.05 + 0.4 * rng.uniform());
  }
  return e.result("thm2-consistency", 1e-12,
                  "p in {2,3,4,6} at gamma = 1 plus 40 random (p, gamma, eps); closed bound <= general bound with closed alpha, beta");
}

inline CheckResult check_upper_bound_form(std::uint64_t seed) {
  Rng rng(seed, 5);
  ErrorMax e;
  for (int trial = 0; trial < 40; ++trial) {
    const double p = 1.0 + 5.0 * rng.uniform();
    const std::size_t d = random_int(rng, 1, 12);
    const auto g = random_gammas(rng, d);
    const double eps = 0.05 + 0.9 * rng.uniform();
    const double c = 0.5 + 2.0 * rng.uniform();
    double direct = c * c / (eps * eps) * std::max(1.0, std::log(static_cast<double>(d)));
    for (double gj : g) direct *= std::pow(1.0 + std::pow(gj * 2.0, 0.5 * p), 2.0 / p);
    e.add(std::abs(upper_bound_inverse(g, p, eps, c) - direct) / direct);
  }
  return e.result("upper-bound-form", 1e-12, "40 random (p, d <= 12, eps, C); log-domain vs direct product (relative)");
}

inline CheckResult check_poly2_beta() {
  ErrorMax e;
  for (double q : {1.5, 2.0, 3.0}) {
    for (double g : {1.0, 0.25}) {
      const double c = 0.5 * u_threshold(q) * std::pow(g, 1.0 / (q - 1.0));
      double best = 0.0;
      for (int i = 0; i <= 256; ++i) best = std::max(best, s_parabola(i / 256.0, c).integral());
      e.add(std::abs(best - (1.0 - c / 12.0)));
    }
  }
  return e.result("poly2-beta", 1e-12, "q in {1.5,2,3}, gamma in {1,1/4}; max integral of s_y over 257 nodes vs 1 - c/12");
}

inline CheckResult check_poly2_alpha_bound() {
  ErrorMax e;
  for (double q : {1.5, 2.0, 3.0}) {
    for (double g : {1.0, 0.25}) {
      const double u = 0.5 * u_threshold(q);
      const double gp = std::pow(g, 1.0 / (q - 1.0));
      const double c = u * gp;
      const double bound = 1.0 + std::pow(2.0 * u, q) * gp * (q + 2.0) / (q + 1.0);
      for (int i = 0; i <= 64; ++i) {
        const double nq = std::pow(poly2_norm(s_parabola(i / 64.0, c), g, q), q);
        e.add(std::max(0.0, nq - bound));
      }
    }
  }
  return e.result("poly2-alpha-bound", 1e-12,
                  "q in {1.5,2,3}, gamma in {1,1/4}, 65 nodes; ||s_y||^q <= 1 + (2u)^q gamma^{1/(q-1)} (q+2)/(q+1)");
}

inline CheckResult check_classifier_chain(std::uint64_t seed) {
  Rng rng(seed, 6);
  ErrorMax e;
  const auto fams = {WeightFamily::Constant, WeightFamily::Polynomial, WeightFamily::Geometric,
                     WeightFamily::Logarithmic, WeightFamily::InverseSqrtLog};
  for (auto f : fams) {
    for (int i = 0; i < 20; ++i) {
      double param = 0.05 + 0.9 * rng.uniform();
      if (f == WeightFamily::Polynomial) param = 0.1 + 4.0 * rng.uniform();
      if (f == WeightFamily::Logarithmic || f == WeightFamily::InverseSqrtLog) param = 0.1 + 0.5 * rng.uniform();
      const double p = 1.0 + 5.0 * rng.uniform();
      const auto v = classify(WeightSequence::family(f, param), HolderPair::from_p(p));
      if ((v.cond_spt && !v.cond_pt) || (v.cond_pt && !v.cond_wt)) e.add(1.0);
    }
  }
  const auto p2 = HolderPair::from_p(2.0);
  if (classify(WeightSequence::polynomial(2.0), p2).tractability != TractabilityClass::SPT) e.add(1.0);
  if (classify(WeightSequence::polynomial(1.0), p2).tractability != TractabilityClass::PTOnly) e.add(1.0);
  if (classify(WeightSequence::inverse_sqrt_log(1.0), p2).tractability != TractabilityClass::WTOnly) e.add(1.0);
  if (classify(WeightSequence::constant(1.0), p2).tractability != TractabilityClass::None) e.add(1.0);
  return e.result("classifier-chain", 0.0, "5 families x 20 draws plus the reference table; error = number of violations");
}

}  // namespace detail

/// Every check, ordered by id.
[[nodiscard]] inline std::vector<CheckResult> run_all(const VerifyOptions& opt = {}) {
  using namespace detail;
  const std::uint64_t s = opt.seed;
  const std::vector<std::function<CheckResult()>> checks{
      [] { return check_eq_initdisc(); },
      [] { return check_empty_rule_identity(); },
      [s] { return check_expansion_oracle(s); },
      [s] { return check_reflection(s); },
      [s] { return check_subset_factorization(s); },
      [] { return check_wcfct(); },
      [] { return check_split_sum(); },
      [] { return check_split_integrals(); },
      [] { return check_split_norms(); },
      [] { return check_alpha(false); },
      [] { return check_alpha(true); },
      [] { return check_tau_positive(); },
      [] { return check_rho_positive(); },
      [s, &opt] { return check_thm2_consistency(s, opt.tau_perturbation); },
      [s] { return check_upper_bound_form(s); },
      [] { return check_poly2_beta(); },
      [] { return check_poly2_alpha_bound(); },
      [s] { return check_classifier_chain(s); },
  };
  std::vector<CheckResult> out(checks.size());
  parallel_for(checks.size(), opt.threads, [&](std::size_t i) { out[i] = checks[i](); });
  std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

[[nodiscard]] inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.status == CheckStatus::Pass; });
}

}  // namespace wlpdisc
