#pragma once

// Weighted L_p discrepancy of point sets and of positive quadrature rules.
//
// For a rule with points x_k and coefficients a_k the local discrepancy is
//
//   D(t) = sum_k a_k 1[x_k in [0,t)] - t_1 ... t_d,
//
// and the discrepancy is the p-th root of
//
//   sum_{u subset [d]} gamma_u^{p/2} int_{[0,1]^|u|} |D((t_u, 1))|^p dt_u.
//
// The u = {} term equals |S - 1|^p with S = sum_k a_k. It vanishes for QMC
// rules (a_k = 1/N), and it makes the empty rule reproduce the initial
// discrepancy prod_j (1 + gamma_j^{p/2}/(p+1))^{1/p}.
//
// Three evaluators are provided: an exact expansion for even p, a
// breakpoint-aligned tensor quadrature for d <= 8, and an unbiased Monte
// Carlo estimator for any d.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wlpdisc/core.hpp"
#include "wlpdisc/gauss_legendre.hpp"
#include "wlpdisc/parallel.hpp"
#include "wlpdisc/random.hpp"

namespace wlpdisc {

enum class DiscrepancyMethod { ExactEvenP, Quadrature, MonteCarlo };

[[nodiscard]] inline std::string_view method_name(DiscrepancyMethod m) {
  switch (m) {
    case DiscrepancyMethod::ExactEvenP: return "exact-even-p";
    case DiscrepancyMethod::Quadrature: return "quadrature";
    case DiscrepancyMethod::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

struct DiscrepancyResult {
  double value = 0.0;  ///< the discrepancy itself (p-th root)
  DiscrepancyMethod method = DiscrepancyMethod::ExactEvenP;
  std::optional<double> std_error;  ///< Monte Carlo only, absent when the estimate is zero
  double p = 2.0;
  std::size_t d = 0;
  std::size_t n = 0;
  double power = 0.0;  ///< value^p before the root, as computed
  std::optional<double> power_std_error;
};

inline constexpr int kDefaultQuadratureOrder = 32;
inline constexpr std::size_t kMaxQuadratureDim = 8;
inline constexpr std::size_t kMonteCarloChunk = 4096;
inline constexpr std::size_t kMinMonteCarloSamples = 100;

namespace detail {

inline void check_target(std::size_t d, std::span<const double> t) {
  if (t.size() != d) {
    throw DimensionError("target has " + std::to_string(t.size()) + " coordinates, point set has d = " +
                         std::to_string(d));
  }
  for (double v : t) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("target coordinate " + std::to_string(v) + " outside [0,1]");
  }
}

/// |S - 1|^p, the u = {} term; zero for QMC rules by construction.
[[nodiscard]] inline double empty_subset_term(const QuadRule& rule, double p) {
  if (rule.is_qmc()) return 0.0;
  const double s = pairwise_sum(rule.coeffs());
  return std::pow(std::abs(s - 1.0), p);
}

[[nodiscard]] inline double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

[[nodiscard]] inline double root_of(double power, double p) {
  return power > 0.0 ? std::pow(power, 1.0 / p) : 0.0;
}

}  // namespace detail

[[nodiscard]] inline double generalized_local_discrepancy(const QuadRule& rule, std::span<const double> t) {
  detail::check_target(rule.d(), t);
  const auto& pts = rule.points();
  PairwiseSum count;
  for (std::size_t k = 0; k < rule.n(); ++k) {
    bool inside = true;
    for (std::size_t j = 0; j < rule.d() && inside; ++j) inside = pts(k, j) < t[j];
    if (inside) count.add(rule.coeffs()[k]);
  }
  double volume = 1.0;
  for (double v : t) volume *= v;
  return count.result() - volume;
}

[[nodiscard]] inline double local_discrepancy(const PointSet& points, std::span<const double> t) {
  if (points.n() == 0) throw DomainError("local discrepancy needs at least one point");
  detail::check_target(points.d(), t);
  std::size_t count = 0;
  for (std::size_t k = 0; k < points.n(); ++k) {
    bool inside = true;
    for (std::size_t j = 0; j < points.d() && inside; ++j) inside = points(k, j) < t[j];
    if (inside) ++count;
  }
  double volume = 1.0;
  for (double v : t) volume *= v;
  return static_cast<double>(count) / static_cast<double>(points.n()) - volume;
}

[[nodiscard]] inline double initial_discrepancy(std::span<const double> gammas, HolderPair hp) {
  const double p = hp.p();
  double log_sum = 0.0;
  for (double g : gammas) log_sum += std::log1p(std::pow(g, 0.5 * p) / (p + 1.0));
  return std::exp(log_sum / p);
}

[[nodiscard]] inline double initial_discrepancy(const WeightSequence& w, std::size_t d, HolderPair hp) {
  return initial_discrepancy(w.materialize(d), hp);
}

// ---------------------------------------------------------------------------
// Exact evaluation for even p
//
// Expanding |D|^p = D^p binomially and integrating each monomial in t gives
//
//   L^p = sum_{m=0}^{p} C(p,m) (-1)^{p-m} sum_{k in [N]^m} a_k1...a_km
//         * [prod_j (1 + w_j (1 - M_j^{p-m+1})/(p-m+1)) - 1]  +  |S-1|^p,
//
// with w_j = gamma_j^{p/2} and M_j the largest j-th coordinate among the
// chosen points (M_j = 0 for m = 0). The summand is symmetric in the tuple,
// so only non-decreasing tuples are visited, each weighted by its multinomial
// multiplicity.

namespace detail {

/// Sum over non-decreasing m-tuples whose first index is `first`.
class TupleSum {
 public:
  TupleSum(const QuadRule& rule, std::span<const double> scaled, int p, int m)
      : rule_(rule), scaled_(scaled), d_(rule.d()), n_(rule.n()), m_(m),
        exponent_(p - m + 1), maxes_(static_cast<std::size_t>(m) * rule.d()), factors_(rule.d()) {}

  double run(std::size_t first) {
    acc_ = PairwiseSum{};
    double m_factorial = 1.0;
    for (int i = 2; i <= m_; ++i) m_factorial *= i;
    const auto x = rule_.points().point(first);
    std::copy(x.begin(), x.end(), maxes_.begin());
    descend(1, first, rule_.coeffs()[first], m_factorial, 1);
    return acc_.result();
  }

 private:
  void descend(int depth, std::size_t prev, double weight, double mult, int run) {
    const double* upper = maxes_.data() + static_cast<std::size_t>(depth - 1) * d_;
    if (depth == m_) {
      const double e = static_cast<double>(exponent_);
      for (std::size_t j = 0; j < d_; ++j) factors_[j] = (1.0 - int_pow(upper[j], exponent_)) / e;
      acc_.add(mult * weight * subset_product_minus_one(scaled_, factors_));
      return;
    }
    double* here = maxes_.data() + static_cast<std::size_t>(depth) * d_;
    for (std::size_t k = prev; k < n_; ++k) {
      const auto x = rule_.points().point(k);
      for (std::size_t j = 0; j < d_; ++j) here[j] = std::max(upper[j], x[j]);
      const int r = k == prev ? run + 1 : 1;
      descend(depth + 1, k, weight * rule_.coeffs()[k], mult / r, r);
    }
  }

  const QuadRule& rule_;
  std::span<const double> scaled_;
  std::size_t d_;
  std::size_t n_;
  int m_;
  int exponent_;
  std::vector<double> maxes_;
  std::vector<double> factors_;
  PairwiseSum acc_;
};

[[nodiscard]] inline int checked_even_p(double p) {
  if (!is_even_integer(p) || p > 64.0) {
    throw UnsupportedExponentError("exact evaluation needs an even integer p in [2, 64], got " +
                                   std::to_string(p));
  }
  return static_cast<int>(p);
}

}  // namespace detail

[[nodiscard]] inline DiscrepancyResult generalized_exact_even_p(const QuadRule& rule,
                                                                std::span<const double> gammas, double p,
                                                                unsigned threads = 0) {
  const int pe = detail::checked_even_p(p);
  if (gammas.size() != rule.d()) throw DimensionError("weights do not match the rule dimension");
  const std::size_t d = rule.d();
  const std::size_t n = rule.n();
  const auto scaled = powered(gammas, 0.5 * p);

  // m = 0: the empty tuple
  std::vector<double> f0(d, 1.0 / (p + 1.0));
  std::vector<double> tuple_sums(static_cast<std::size_t>(pe) + 1, 0.0);
  tuple_sums[0] = subset_product_minus_one(scaled, f0);

  // tasks (m, first index) for m >= 1, reduced per m in index order
  std::vector<double> slots(static_cast<std::size_t>(pe) * n, 0.0);
  parallel_for(slots.size(), threads, [&](std::size_t task) {
    const int m = static_cast<int>(task / n) + 1;
    const std::size_t first = task % n;
    detail::TupleSum sum(rule, scaled, pe, m);
    slots[task] = sum.run(first);
  });
  const std::span<const double> all(slots);
  for (std::size_t m = 1; m <= static_cast<std::size_t>(pe); ++m) {
    tuple_sums[m] = pairwise_sum(all.subspan((m - 1) * n, n));
  }

  double power = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= pe; ++m) {
    const double sign = (pe - m) % 2 == 0 ? 1.0 : -1.0;
    power += sign * binom * tuple_sums[static_cast<std::size_t>(m)];
    binom = binom * static_cast<double>(pe - m) / static_cast<double>(m + 1);
  }
  power += detail::empty_subset_term(rule, p);
  power = std::max(power, 0.0);

  DiscrepancyResult r;
  r.power = power;
  r.value = detail::root_of(power, p);
  r.method = DiscrepancyMethod::ExactEvenP;
  r.p = p;
  r.d = d;
  r.n = n;
  return r;
}

[[nodiscard]] inline DiscrepancyResult generalized_exact_even_p(const QuadRule& rule, const WeightSequence& w,
                                                                double p, unsigned threads = 0) {
  return generalized_exact_even_p(rule, w.materialize(rule.d()), p, threads);
}

[[nodiscard]] inline DiscrepancyResult exact_even_p(const PointSet& points, std::span<const double> gammas,
                                                    double p, unsigned threads = 0) {
  (void)detail::checked_even_p(p);
  if (points.n() == 0) throw DomainError("exact_even_p needs at least one point; use the generalized form");
  return generalized_exact_even_p(QuadRule::qmc(points), gammas, p, threads);
}

[[nodiscard]] inline DiscrepancyResult exact_even_p(const PointSet& points, const WeightSequence& w, double p,
                                                    unsigned threads = 0) {
  return exact_even_p(points, w.materialize(points.d()), p, threads);
}

// ---------------------------------------------------------------------------
// Quadrature oracle
//
// On each projection u the axes are cut at the point coordinates, so the
// coefficient mass c counted by D is constant on every cell and D = c - prod t.
// Cells with c = 0 integrate prod t_j^p in closed form. Elsewhere the outer
// |u|-1 axes use Gauss–Legendre and the innermost axis is integrated exactly:
//
//   int_lo^hi |c - P t|^p dt = (F(c - P lo) - F(c - P hi)) / P,
//   F(y) = sign(y) |y|^{p+1} / (p+1).

namespace detail {

class ProjectionIntegral {
 public:
  ProjectionIntegral(const QuadRule& rule, double p, const GaussLegendre& gl)
      : rule_(rule), p_(p), gl_(gl) {}

  double operator()(const std::vector<std::size_t>& axes) {
    const std::size_t s = axes.size();
    cuts_.assign(s, {});
    for (std::size_t a = 0; a < s; ++a) {
      auto& c = cuts_[a];
      c.push_back(0.0);
      for (std::size_t k = 0; k < rule_.n(); ++k) c.push_back(rule_.points()(k, axes[a]));
      c.push_back(1.0);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    axes_ = &axes;
    lo_.assign(s, 0.0);
    hi_.assign(s, 0.0);
    outer_x_.assign(s, {});
    outer_w_.assign(s, {});
    std::vector<std::size_t> cell(s, 0);
    PairwiseSum acc;
    for (;;) {
      for (std::size_t a = 0; a < s; ++a) {
        lo_[a] = cuts_[a][cell[a]];
        hi_[a] = cuts_[a][cell[a] + 1];
      }
      acc.add(cell_integral());
      std::size_t a = 0;
      while (a < s && ++cell[a] + 1 == cuts_[a].size()) cell[a++] = 0;
      if (a == s) break;
    }
    return acc.result();
  }

 private:
  double cell_integral() {
    const auto& axes = *axes_;
    const std::size_t s = axes.size();
    double c = 0.0;
    for (std::size_t k = 0; k < rule_.n(); ++k) {
      bool inside = true;
      for (std::size_t a = 0; a < s && inside; ++a) inside = rule_.points()(k, axes[a]) <= lo_[a];
      if (inside) c += rule_.coeffs()[k];
    }
    if (c == 0.0) {
      double v = 1.0;
      for (std::size_t a = 0; a < s; ++a) {
        v *= (std::pow(hi_[a], p_ + 1.0) - std::pow(lo_[a], p_ + 1.0)) / (p_ + 1.0);
      }
      return v;
    }
    for (std::size_t a = 0; a + 1 < s; ++a) gl_.map(lo_[a], hi_[a], outer_x_[a], outer_w_[a]);
    c_ = c;
    return outer(0, 1.0, 1.0);
  }

  double outer(std::size_t axis, double prod, double weight) {
    const std::size_t s = axes_->size();
    if (axis + 1 == s) return weight * inner(prod, lo_[axis], hi_[axis]);
    double sum = 0.0;
    for (std::size_t i = 0; i < outer_x_[axis].size(); ++i) {
      sum += outer(axis + 1, prod * outer_x_[axis][i], weight * outer_w_[axis][i]);
    }
    return sum;
  }

  double inner(double prod, double lo, double hi) const {
    auto antiderivative = [this](double y) {
      const double v = std::pow(std::abs(y), p_ + 1.0) / (p_ + 1.0);
      return y < 0.0 ? -v : v;
    };
    return (antiderivative(c_ - prod * lo) - antiderivative(c_ - prod * hi)) / prod;
  }

  const QuadRule& rule_;
  double p_;
  const GaussLegendre& gl_;
  const std::vector<std::size_t>* axes_ = nullptr;
  std::vector<std::vector<double>> cuts_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<std::vector<double>> outer_x_;
  std::vector<std::vector<double>> outer_w_;
  double c_ = 0.0;
};

}  // namespace detail

[[nodiscard]] inline DiscrepancyResult lp_quadrature(const QuadRule& rule, std::span<const double> gammas,
                                                     HolderPair hp, int order = kDefaultQuadratureOrder,
                                                     unsigned threads = 0) {
  const std::size_t d = rule.d();
  if (d > kMaxQuadratureDim) {
    throw CapacityError("quadrature oracle supports d <= " + std::to_string(kMaxQuadratureDim) + ", got d = " +
                        std::to_string(d) + "; use lp_monte_carlo");
  }
  if (order < 2) throw DomainError("quadrature order must be >= 2");
  if (gammas.size() != d) throw DimensionError("weights do not match the rule dimension");
  const double p = hp.p();
  const auto scaled = powered(gammas, 0.5 * p);
  const GaussLegendre gl(order);

  const std::size_t subsets = (std::size_t{1} << d) - 1;
  std::vector<double> slots(subsets, 0.0);
  parallel_for(subsets, threads, [&](std::size_t idx) {
    const std::size_t mask = idx + 1;
    std::vector<std::size_t> axes;
    double weight = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask & (std::size_t{1} << j)) {
        axes.push_back(j);
        weight *= scaled[j];
      }
    }
    detail::ProjectionIntegral integral(rule, p, gl);
    slots[idx] = weight * integral(axes);
  });
  double power = pairwise_sum(slots) + detail::empty_subset_term(rule, p);

  DiscrepancyResult r;
  r.power = power;
  r.value = detail::root_of(power, p);
  r.method = DiscrepancyMethod::Quadrature;
  r.p = p;
  r.d = d;
  r.n = rule.n();
  return r;
}

[[nodiscard]] inline DiscrepancyResult lp_quadrature(const QuadRule& rule, const WeightSequence& w, HolderPair hp,
                                                     int order = kDefaultQuadratureOrder, unsigned threads = 0) {
  return lp_quadrature(rule, w.materialize(rule.d()), hp, order, threads);
}

// ---------------------------------------------------------------------------
// Monte Carlo
//
// A non-empty u is drawn with probability w_u / Z, Z = prod (1 + w_j) - 1:
// the smallest member j is drawn from its exact marginal, then every later
// coordinate joins independently with probability w_i/(1+w_i). t_u is uniform
// and Z |D((t_u,1))|^p is an unbiased sample of the non-empty part of L^p.
// Samples are split into chunks of kMonteCarloChunk, chunk c draws from
// stream c of the seed, and chunk statistics are merged in chunk order, so
// the result does not depend on the number of threads.

namespace detail {

struct RunningMoments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
};

}  // namespace detail

[[nodiscard]] inline DiscrepancyResult lp_monte_carlo(const QuadRule& rule, std::span<const double> gammas,
                                                      HolderPair hp, std::size_t samples, std::uint64_t seed,
                                                      unsigned threads = 0) {
  if (samples < kMinMonteCarloSamples) {
    throw DomainError("Monte Carlo needs at least " + std::to_string(kMinMonteCarloSamples) + " samples");
  }
  const std::size_t d = rule.d();
  if (gammas.size() != d) throw DimensionError("weights do not match the rule dimension");
  const double p = hp.p();
  const auto scaled = powered(gammas, 0.5 * p);

  std::vector<double> include(d);
  std::vector<double> first_cdf(d);
  double none = 1.0;
  double cumulative = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    include[j] = scaled[j] / (1.0 + scaled[j]);
    cumulative += none * include[j];
    first_cdf[j] = cumulative;
    none /= 1.0 + scaled[j];
  }
  const double normalizer = subset_product_minus_one(scaled, std::vector<double>(d, 1.0));

  const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<detail::RunningMoments> stats(chunks);
  const auto& pts = rule.points();
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(seed, c);
    const std::size_t begin = c * kMonteCarloChunk;
    const std::size_t end = std::min(samples, begin + kMonteCarloChunk);
    std::vector<std::size_t> axes;
    std::vector<double> t;
    detail::RunningMoments mom;
    for (std::size_t s = begin; s < end; ++s) {
      axes.clear();
      t.clear();
      const double pick = rng.uniform() * cumulative;
      std::size_t first = static_cast<std::size_t>(
          std::upper_bound(first_cdf.begin(), first_cdf.end(), pick) - first_cdf.begin());
      first = std::min(first, d - 1);
      axes.push_back(first);
      for (std::size_t j = first + 1; j < d; ++j) {
        if (rng.bernoulli(include[j])) axes.push_back(j);
      }
      double volume = 1.0;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        t.push_back(rng.uniform());
        volume *= t.back();
      }
      double mass = 0.0;
      for (std::size_t k = 0; k < rule.n(); ++k) {
        bool inside = true;
        for (std::size_t a = 0; a < axes.size() && inside; ++a) inside = pts(k, axes[a]) < t[a];
        if (inside) mass += rule.coeffs()[k];
      }
      mom.add(normalizer * std::pow(std::abs(mass - volume), p));
    }
    stats[c] = mom;
  });
  detail::RunningMoments total;
  for (const auto& s : stats) total.merge(s);

  const double power = total.mean + detail::empty_subset_term(rule, p);
  const double power_se = std::sqrt(total.m2 / (total.count - 1.0) / total.count);

  DiscrepancyResult r;
  r.method = DiscrepancyMethod::MonteCarlo;
  r.p = p;
  r.d = d;
  r.n = rule.n();
  r.power = power;
  r.power_std_error = power_se;
  r.value = detail::root_of(power, p);
  if (power > 0.0) r.std_error = power_se / (p * std::pow(r.value, p - 1.0));
  return r;
}

[[nodiscard]] inline DiscrepancyResult lp_monte_carlo(const QuadRule& rule, const WeightSequence& w, HolderPair hp,
                                                      std::size_t samples, std::uint64_t seed,
                                                      unsigned threads = 0) {
  return lp_monte_carlo(rule, w.materialize(rule.d()), hp, samples, seed, threads);
}

// ---------------------------------------------------------------------------
// Reflection and the p = 2 worst-case error

/// Points 1 - x_k; results equal to 1 are pulled down to the largest double below 1.
[[nodiscard]] inline PointSet reflect(const PointSet& points) {
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  std::vector<double> c = points.coords();
  for (double& x : c) x = std::min(1.0 - x, kBelowOne);
  return PointSet(points.d(), std::move(c));
}

/// Worst-case error of the QMC rule in the Hilbert space anchored at 0 with
/// kernel prod_j (1 + gamma_j min(x_j, y_j)).
[[nodiscard]] inline double qmc_worst_case_error_p2(const PointSet& points, std::span<const double> gammas) {
  const std::size_t d = points.d();
  const std::size_t n = points.n();
  if (gammas.size() != d) throw DimensionError("weights do not match the point dimension");
  if (n == 0) throw DomainError("worst-case error needs at least one point");
  double initial = 1.0;
  for (double g : gammas) initial *= 1.0 + g / 3.0;

  PairwiseSum cross;
  for (std::size_t k = 0; k < n; ++k) {
    double prod = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = points(k, j);
      prod *= 1.0 + gammas[j] * x * (2.0 - x) / 2.0;
    }
    cross.add(prod);
  }
  PairwiseSum gram;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      double prod = 1.0;
      for (std::size_t j = 0; j < d; ++j) prod *= 1.0 + gammas[j] * std::min(points(k, j), points(l, j));
      gram.add(prod);
    }
  }
  const double nn = static_cast<double>(n);
  const double squared = initial - 2.0 / nn * cross.result() + gram.result() / (nn * nn);
  return std::sqrt(std::max(squared, 0.0));
}

[[nodiscard]] inline double qmc_worst_case_error_p2(const PointSet& points, const WeightSequence& w) {
  return qmc_worst_case_error_p2(points, w.materialize(points.d()));
}

}  // namespace wlpdisc
