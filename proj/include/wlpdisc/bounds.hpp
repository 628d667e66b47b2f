#pragma once

// Closed-form bounds on the inverse discrepancy N(eps, d) and the
// tractability classification of weight families.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wlpdisc/core.hpp"
#include "wlpdisc/sobolev.hpp"

namespace wlpdisc {

/// tau_p = (2p - (p+1)K) / (4p^2 + 6p + (p+1)K), K = 1 + 2^{p/(p+1)} - 2^{1/(p+1)}.
[[nodiscard]] inline double tau(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("tau_p needs p in (1, inf), got " + std::to_string(p));
  const double k = (p + 1.0) * split_constant(p);
  return (2.0 * p - k) / (4.0 * p * p + 6.0 * p + k);
}

/// (1 - 2 eps) prod_j (1 + tau_p gamma_j^{p/2})^{1/q}, in log domain.
[[nodiscard]] inline double lower_bound_inverse(std::span<const double> gammas, HolderPair hp, double eps,
                                                double tau_shift = 0.0) {
  const double p = hp.p();
  if (!(p > 1.0)) throw DomainError("the inverse-discrepancy lower bound needs p > 1");
  check_eps_lower(eps);
  const double t = tau(p) + tau_shift;
  double log_sum = 0.0;
  for (double g : gammas) log_sum += std::log1p(t * std::pow(g, 0.5 * p));
  return (1.0 - 2.0 * eps) * std::exp(log_sum / hp.q());
}

[[nodiscard]] inline double lower_bound_inverse(const WeightSequence& w, HolderPair hp, double eps, std::size_t d) {
  return lower_bound_inverse(w.materialize(d), hp, eps);
}

/// eps^{-2} C^2 max(1, log d) prod_j (1 + gamma_j^{p/2} 2^{p/2})^{2/p}.
/// C is an absolute constant known only to exist, so it must be supplied.
[[nodiscard]] inline double upper_bound_inverse(std::span<const double> gammas, double p, double eps,
                                                std::optional<double> constant) {
  if (!constant) {
    throw DomainError(
        "the upper bound depends on an absolute constant C that is only known to exist; "
        "pass C explicitly (results are parametric in C)");
  }
  const double c = *constant;
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("constant C must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("upper bound needs p in [1, inf)");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("upper bound needs eps in (0,1)");
  if (gammas.empty()) throw DomainError("upper bound needs d >= 1");
  const double boost = std::pow(2.0, 0.5 * p);
  double log_sum = 0.0;
  for (double g : gammas) log_sum += std::log1p(std::pow(g, 0.5 * p) * boost);
  const double d = static_cast<double>(gammas.size());
  return c * c / (eps * eps) * std::max(1.0, std::log(d)) * std::exp(2.0 / p * log_sum);
}

[[nodiscard]] inline double upper_bound_inverse(const WeightSequence& w, double p, double eps, std::size_t d,
                                                std::optional<double> constant) {
  return upper_bound_inverse(w.materialize(d), p, eps, constant);
}

// ---------------------------------------------------------------------------
// BoundReport

struct WeightsDigest {
  double min = 0.0;
  double max = 0.0;
  double power_sum = 0.0;  ///< sum_j gamma_j^{p/2}
  std::vector<double> leading;  ///< first few gamma_j
};

struct BoundReport {
  double p = 2.0;
  double eps = 0.0;
  std::size_t d = 0;
  double lower = 0.0;
  std::optional<double> upper;
  std::optional<double> upper_constant;  ///< the C the upper bound was evaluated with
  double tau_p = 0.0;
  WeightsDigest weights;
  std::string note;
};

[[nodiscard]] inline WeightsDigest digest(std::span<const double> gammas, double p) {
  WeightsDigest dg;
  dg.min = *std::min_element(gammas.begin(), gammas.end());
  dg.max = *std::max_element(gammas.begin(), gammas.end());
  for (double g : gammas) dg.power_sum += std::pow(g, 0.5 * p);
  dg.leading.assign(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(5, gammas.size())));
  return dg;
}

[[nodiscard]] inline BoundReport bound_report(const WeightSequence& w, HolderPair hp, double eps, std::size_t d,
                                              std::optional<double> constant = std::nullopt) {
  const auto gammas = w.materialize(d);
  BoundReport r;
  r.p = hp.p();
  r.eps = eps;
  r.d = d;
  r.weights = digest(gammas, r.p);
  if (r.p > 1.0) r.tau_p = tau(r.p);
  if (r.p > 1.0 && eps > 0.0 && eps < 0.5) {
    r.lower = lower_bound_inverse(gammas, hp, eps);
  } else {
    r.note = "lower bound needs p > 1 and eps in (0, 1/2); reported as 0";
  }
  if (constant) {
    r.upper = upper_bound_inverse(gammas, r.p, eps, constant);
    r.upper_constant = constant;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tractability classification

enum class TractabilityClass { SPT, PTOnly, WTOnly, None };

[[nodiscard]] inline std::string_view class_name(TractabilityClass c) {
  switch (c) {
    case TractabilityClass::SPT: return "SPT";
    case TractabilityClass::PTOnly: return "PT-only";
    case TractabilityClass::WTOnly: return "WT-only";
    case TractabilityClass::None: return "none";
  }
  return "?";
}

struct TractabilityVerdict {
  TractabilityClass tractability = TractabilityClass::None;
  bool cond_spt = false;  ///< sum_j gamma_j^{p/2} < inf
  bool cond_pt = false;   ///< limsup (1/log d) sum_{j<=d} gamma_j^{p/2} < inf
  bool cond_wt = false;   ///< (1/d) sum_{j<=d} gamma_j^{p/2} -> 0
  std::string rationale;
  std::string caveat;
};

/// Partial sums of gamma_j^{p/2} at d = 1, 2, 4, ..., for lists where no
/// limit statement is possible.
struct PartialSumTrend {
  std::vector<std::size_t> d;
  std::vector<double> sum;
  std::vector<double> over_log_d;  ///< sum / log d (inf at d = 1)
  std::vector<double> over_d;
};

[[nodiscard]] inline PartialSumTrend partial_sum_trend(std::span<const double> gammas, double p) {
  PartialSumTrend t;
  double s = 0.0;
  std::size_t next = 1;
  for (std::size_t j = 1; j <= gammas.size(); ++j) {
    s += std::pow(gammas[j - 1], 0.5 * p);
    if (j == next || j == gammas.size()) {
      const double dj = static_cast<double>(j);
      t.d.push_back(j);
      t.sum.push_back(s);
      t.over_log_d.push_back(j == 1 ? kInfinity : s / std::log(dj));
      t.over_d.push_back(s / dj);
      if (j == next) next *= 2;
    }
  }
  return t;
}

/// Thrown for explicit weight lists: convergence of a sequence cannot be
/// decided from finitely many terms. Carries the numeric trend instead.
class ClassificationUndecidable : public DomainError {
 public:
  explicit ClassificationUndecidable(PartialSumTrend trend)
      : DomainError("explicit weight lists admit no limit statement; see the partial-sum trend"),
        trend_(std::move(trend)) {}
  [[nodiscard]] const PartialSumTrend& trend() const { return trend_; }

 private:
  PartialSumTrend trend_;
};

namespace detail {

[[nodiscard]] inline std::string caveat_for(double p) {
  if (p == 1.0) {
    return "p = 1: only sufficiency of the PT and WT conditions is known; none of the three conditions is known "
           "to be necessary and the SPT condition is not known to be sufficient.";
  }
  if (is_even_integer(p)) {
    return "even p: each of the SPT, PT and WT conditions is necessary and sufficient.";
  }
  return "p in (1,inf) not even: the PT and WT conditions are necessary and sufficient; the SPT condition is "
         "necessary, but its sufficiency is open for non-even p.";
}

}  // namespace detail

[[nodiscard]] inline TractabilityVerdict classify(const WeightSequence& w, HolderPair hp) {
  const double p = hp.p();
  if (w.is_explicit()) throw ClassificationUndecidable(partial_sum_trend(w.values(), p));
  const auto [kind, c] = w.family_spec();
  TractabilityVerdict v;
  const double e = 0.5 * p;
  // Each branch uses the asymptotics of S_d = sum_{j<=d} gamma_j^{p/2}.
  switch (kind) {
    case WeightFamily::Constant:
      // S_d = d c^{p/2}: S_d / d stays at c^{p/2} > 0.
      v.rationale = "constant weights: gamma_j does not tend to 0 and S_d = d * gamma^{p/2} grows linearly, so "
                    "all three conditions fail; the lower bound grows like (1 + tau_p gamma^{p/2})^{d/q} "
                    "(curse of dimensionality).";
      break;
    case WeightFamily::Polynomial: {
      // gamma_j^{p/2} = j^{-s}, s = a p / 2. p-series: S_d bounded iff s > 1;
      // S_d ~ log d at s = 1; S_d ~ d^{1-s}/(1-s) for s < 1, which is o(d) but not O(log d).
      const double s = c * e;
      constexpr double kTie = 1e-12;
      v.cond_spt = s > 1.0 + kTie;
      v.cond_pt = s >= 1.0 - kTie;
      v.cond_wt = true;
      v.rationale = "polynomial weights j^{-a}: gamma_j^{p/2} = j^{-" + std::to_string(s) + "}; " +
                    (v.cond_spt ? std::string("the series converges (exponent > 1)")
                     : v.cond_pt ? std::string("S_d ~ log d (harmonic series), so the PT limsup equals 1 but the series diverges")
                                 : std::string("S_d ~ d^{1-s}/(1-s) grows faster than log d but is o(d)")) +
                    ".";
      break;
    }
    case WeightFamily::Geometric:
      // geometric series theta^{j p/2} converges
      v.cond_spt = v.cond_pt = v.cond_wt = true;
      v.rationale = "geometric weights theta^j: gamma_j^{p/2} = (theta^{p/2})^j is a convergent geometric series.";
      break;
    case WeightFamily::Logarithmic:
    case WeightFamily::InverseSqrtLog: {
      // gamma_j^{p/2} = C / log(j+1)^r with r = p/2 (logarithmic) or p/4 (inverse-sqrt-log).
      // Integral comparison: S_d ~ C d / log(d)^r, so S_d / log d -> inf but S_d / d -> 0.
      v.cond_wt = true;
      const std::string r = kind == WeightFamily::Logarithmic ? "p/2" : "p/4";
      v.rationale = std::string(family_name(kind)) + " weights: gamma_j^{p/2} ~ C/log(j)^{" + r +
                    "}, so S_d ~ C d/log(d)^{" + r + "}: the series diverges faster than log d but S_d/d -> 0.";
      break;
    }
  }
  v.tractability = v.cond_spt  ? TractabilityClass::SPT
                   : v.cond_pt ? TractabilityClass::PTOnly
                   : v.cond_wt ? TractabilityClass::WTOnly
                               : TractabilityClass::None;
  v.caveat = detail::caveat_for(p);
  if (w.raw(1) > 1.0) {
    v.caveat += " Note: gamma_1 = " + std::to_string(w.raw(1)) +
                " exceeds 1, so this family cannot be materialized; the verdict concerns its tail only.";
  }
  return v;
}

}  // namespace wlpdisc
