#pragma once

// Bracketing the inverse discrepancy
//
//   N(eps, d) = min{ N : some N-point set P has L_{p,gamma}(P) <= eps * initial discrepancy }.
//
// The lower side is the closed-form bound. The upper side is the smallest N
// at which one of the supplied generators produces a passing set: N doubles
// from 1 until some generator passes, then each generator that passed at that
// step is bisected between the previous (failing) step and the passing one.
// Bisection assumes the generator's discrepancy decreases in N; when it does
// not, the result is still a valid achieved N, just not necessarily the
// smallest one.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wlpdisc/bounds.hpp"
#include "wlpdisc/core.hpp"
#include "wlpdisc/discrepancy.hpp"
#include "wlpdisc/parallel.hpp"
#include "wlpdisc/pointsets.hpp"

namespace wlpdisc {

struct SearchOptions {
  bool mc_risk = false;               ///< allow Monte Carlo for odd p with d > 8
  std::size_t mc_samples = 200000;
  std::uint64_t mc_seed = 1;
  int quadrature_order = kDefaultQuadratureOrder;
  unsigned threads = 0;
};

struct Witness {
  GeneratorSpec generator;
  std::size_t n = 0;
};

struct InverseBracket {
  double eps = 0.0;
  std::size_t d = 0;
  double p = 2.0;
  double lower = 0.0;
  std::optional<std::size_t> upper_estimate;  ///< empty: no N <= n_max passed
  std::optional<Witness> witness;
  double witness_value = 0.0;
  std::optional<double> witness_std_error;
  double threshold = 0.0;
  double initial = 0.0;
  DiscrepancyMethod method = DiscrepancyMethod::ExactEvenP;
  std::size_t evaluations = 0;
  std::string caveat;
};

/// Discrepancy evaluation with the search's pass rule attached.
struct Evaluation {
  double value = 0.0;
  std::optional<double> std_error;
  bool pass = false;
};

namespace detail {

class SearchEvaluator {
 public:
  SearchEvaluator(std::vector<double> gammas, HolderPair hp, double threshold, const SearchOptions& opt)
      : gammas_(std::move(gammas)), hp_(hp), threshold_(threshold), opt_(opt) {
    const double p = hp.p();
    const std::size_t d = gammas_.size();
    if (is_even_integer(p) && p <= 64.0) {
      method_ = DiscrepancyMethod::ExactEvenP;
    } else if (d <= kMaxQuadratureDim) {
      method_ = DiscrepancyMethod::Quadrature;
    } else if (opt.mc_risk) {
      method_ = DiscrepancyMethod::MonteCarlo;
    } else {
      throw CapacityError("no trusted evaluator for p = " + std::to_string(p) + " with d = " + std::to_string(d) +
                          " > 8; pass the Monte Carlo risk override to accept estimate + 3 std_error <= threshold");
    }
  }

  [[nodiscard]] DiscrepancyMethod method() const { return method_; }

  [[nodiscard]] Evaluation operator()(const PointSet& pts, unsigned threads) const {
    Evaluation e;
    switch (method_) {
      case DiscrepancyMethod::ExactEvenP:
        e.value = exact_even_p(pts, gammas_, hp_.p(), threads).value;
        e.pass = e.value <= threshold_;
        break;
      case DiscrepancyMethod::Quadrature:
        e.value = lp_quadrature(QuadRule::qmc(pts), gammas_, hp_, opt_.quadrature_order, threads).value;
        e.pass = e.value <= threshold_;
        break;
      case DiscrepancyMethod::MonteCarlo: {
        const auto r = lp_monte_carlo(QuadRule::qmc(pts), gammas_, hp_, opt_.mc_samples, opt_.mc_seed, threads);
        e.value = r.value;
        e.std_error = r.std_error;
        e.pass = r.value + 3.0 * r.std_error.value_or(0.0) <= threshold_;
        break;
      }
    }
    return e;
  }

 private:
  std::vector<double> gammas_;
  HolderPair hp_;
  double threshold_;
  SearchOptions opt_;
  DiscrepancyMethod method_ = DiscrepancyMethod::ExactEvenP;
};

}  // namespace detail

[[nodiscard]] inline InverseBracket inverse_bracket(const WeightSequence& w, HolderPair hp, double eps, std::size_t d,
                                                    const std::vector<GeneratorSpec>& generators, std::size_t n_max,
                                                    const SearchOptions& opt = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
  if (generators.empty()) throw DomainError("at least one generator is needed");
  if (n_max == 0) throw DomainError("n_max must be >= 1");
  const auto gammas = w.materialize(d);

  InverseBracket b;
  b.eps = eps;
  b.d = d;
  b.p = hp.p();
  b.initial = initial_discrepancy(gammas, hp);
  b.threshold = eps * b.initial;
  if (b.p > 1.0 && eps < 0.5) {
    b.lower = lower_bound_inverse(gammas, hp, eps);
  } else {
    b.caveat = "lower bound needs p > 1 and eps in (0, 1/2); reported as 0";
  }

  const detail::SearchEvaluator eval(gammas, hp, b.threshold, opt);
  b.method = eval.method();
  const std::size_t g = generators.size();
  // parallelism goes across generators when there are several, inside the evaluator otherwise
  const unsigned outer = g > 1 ? opt.threads : 1U;
  const unsigned inner = g > 1 ? 1U : opt.threads;

  std::vector<Evaluation> round(g);
  std::size_t previous = 0;
  std::size_t step = 1;
  std::vector<std::size_t> winners;
  for (;;) {
    parallel_for(g, outer, [&](std::size_t i) { round[i] = eval(generate(generators[i], step, d, inner), inner); });
    b.evaluations += g;
    for (std::size_t i = 0; i < g; ++i) {
      if (round[i].pass) winners.push_back(i);
    }
    if (!winners.empty() || step == n_max) break;
    previous = step;
    step = std::min(n_max, step * 2);
  }
  if (winners.empty()) {
    b.caveat += std::string(b.caveat.empty() ? "" : "; ") + "no generated set with N <= " + std::to_string(n_max) +
                " met the threshold (open bracket)";
    return b;
  }

  struct Found {
    std::size_t n;
    Evaluation e;
    std::size_t evaluations;
  };
  std::vector<Found> found(winners.size());
  parallel_for(winners.size(), outer, [&](std::size_t wi) {
    const std::size_t i = winners[wi];
    std::size_t lo = previous;  // fails (or 0)
    std::size_t hi = step;      // passes
    Evaluation best = round[i];
    std::size_t count = 0;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const auto e = eval(generate(generators[i], mid, d, inner), inner);
      ++count;
      if (e.pass) {
        hi = mid;
        best = e;
      } else {
        lo = mid;
      }
    }
    found[wi] = {hi, best, count};
  });

  std::size_t pick = 0;
  for (std::size_t wi = 0; wi < found.size(); ++wi) {
    b.evaluations += found[wi].evaluations;
    if (found[wi].n < found[pick].n) pick = wi;  // strict: earlier generator wins ties
  }
  b.upper_estimate = found[pick].n;
  b.witness = Witness{generators[winners[pick]], found[pick].n};
  b.witness_value = found[pick].e.value;
  b.witness_std_error = found[pick].e.std_error;
  return b;
}

}  // namespace wlpdisc
