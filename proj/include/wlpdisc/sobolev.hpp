#pragma once

// Anchored Sobolev space F_{1,gamma,q} with norm
//
//   ||f|| = (|f(0)|^q + gamma^{-q/2} int_0^1 |f'(t)|^q dt)^{1/q},
//
// its worst-case function, the fooling functions s_y used to bound positive
// quadrature from below, and the general lower bound
//
//   N(eps, d) >= min(prod ||h_j|| / prod alpha_j, prod I(h_j) / prod beta_j) (1 - 2 eps).
//
// Throughout, w = gamma^{p/2}. The worst-case function carries the prefactor
// w: h(x) = 1 + w (1 - (1-x)^p) / p. That is the only prefactor for which
// int h = 1 + w/(p+1) and ||h||^q = 1 + w/(p+1) hold simultaneously, and
// hence the one for which the initial integration error equals the initial
// discrepancy. The two Theorem 2 constants are printed with gamma and
// gamma^{1/p} in the source; both are implemented with w.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wlpdisc/core.hpp"
#include "wlpdisc/gauss_legendre.hpp"
#include "wlpdisc/piecewise_poly.hpp"

namespace wlpdisc {

namespace detail {

[[nodiscard]] inline int checked_integer_p(double p) {
  if (!(p >= 2.0 && p <= static_cast<double>(PiecewisePoly::kMaxDegree) && p == std::floor(p))) {
    throw RepresentationError("piecewise-polynomial form needs an integer p in [2, 8], got " + std::to_string(p));
  }
  return static_cast<int>(p);
}

inline void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("weight gamma must lie in (0,1], got " + std::to_string(gamma));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// worst-case function

/// h(x) = 1 + gamma^{p/2} (1 - (1-x)^p) / p, integer p only.
[[nodiscard]] inline PiecewisePoly h_worst(double gamma, double p) {
  detail::check_gamma(gamma);
  const int pi = detail::checked_integer_p(p);
  const double w = std::pow(gamma, 0.5 * p);
  Coeffs c = poly::scale(poly::one_minus_x_pow(pi), -w / p);
  c[0] += 1.0 + w / p;
  return PiecewisePoly::single(std::move(c));
}

/// int_0^1 h = 1 + gamma^{p/2}/(p+1), any real p > 1.
[[nodiscard]] inline double h_worst_integral(double gamma, double p) {
  return 1.0 + std::pow(gamma, 0.5 * p) / (p + 1.0);
}

/// ||h||_{1,gamma,q} = (1 + gamma^{p/2}/(p+1))^{1/q}.
[[nodiscard]] inline double h_worst_norm(double gamma, HolderPair hp) {
  return std::pow(h_worst_integral(gamma, hp.p()), 1.0 / hp.q());
}

/// (|f(0)|^q + gamma^{-q/2} int |f'|^q)^{1/q}, per-segment Gauss–Legendre.
[[nodiscard]] inline double norm_1d(const PiecewisePoly& f, double gamma, HolderPair hp, int order = 32) {
  const double q = hp.q();
  if (std::isinf(q)) throw DomainError("norm_1d supports finite q only (p > 1)");
  if (!(gamma > 0.0)) throw DomainError("weight gamma must be positive");
  const GaussLegendre gl(order);
  const double slope_part = f.integral_abs_pow_of(f.derivative_segments(), q, gl);
  return std::pow(std::pow(std::abs(f(0.0)), q) + std::pow(gamma, -0.5 * q) * slope_part, 1.0 / q);
}

// ---------------------------------------------------------------------------
// fooling-function split

/// a = 1 - 2^{-1/(p+1)}, the point where the two split norms are meant to balance.
[[nodiscard]] inline double split_point(double p) { return 1.0 - std::pow(2.0, -1.0 / (p + 1.0)); }

/// 1 + 2^{p/(p+1)} - 2^{1/(p+1)}.
[[nodiscard]] inline double split_constant(double p) {
  return 1.0 + std::pow(2.0, p / (p + 1.0)) - std::pow(2.0, 1.0 / (p + 1.0));
}

struct FoolingSplit {
  double a;
  PiecewisePoly h11;   ///< linear up to a, constant after
  PiecewisePoly h120;  ///< supported on [0,a]
  PiecewisePoly h121;  ///< supported on [a,1]
};

/// Split of 1 - (1-x)^p into h11 + h120 + h121 at a = split_point(p).
[[nodiscard]] inline FoolingSplit fooling_split(double p) {
  const int pi = detail::checked_integer_p(p);
  const double a = split_point(p);
  const double top = 1.0 - std::pow(1.0 - a, p);  // 1 - (1-a)^p
  const double slope = top / a;
  const std::vector<double> br{0.0, a, 1.0};

  Coeffs rise = poly::scale(poly::one_minus_x_pow(pi), -1.0);  // 1 - (1-x)^p
  rise[0] += 1.0;

  PiecewisePoly h11(br, {Coeffs{0.0, slope}, Coeffs{top}});
  Coeffs left = rise;
  left[1] -= slope;
  PiecewisePoly h120(br, {left, Coeffs{0.0}});
  Coeffs right = rise;
  right[0] -= top;
  PiecewisePoly h121(br, {Coeffs{0.0}, right});
  return {a, std::move(h11), std::move(h120), std::move(h121)};
}

/// Fooling function at node y: 1 + (w/p)(h11 + h120) for y <= a, else with h121.
[[nodiscard]] inline PiecewisePoly s_function(double gamma, double p, double y) {
  detail::check_gamma(gamma);
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("node y must lie in [0,1]");
  const auto split = fooling_split(p);
  const double w = std::pow(gamma, 0.5 * p);
  const auto& tail = y <= split.a ? split.h120 : split.h121;
  return (split.h11 + tail).scaled(w / p).plus_constant(1.0);
}

// ---------------------------------------------------------------------------
// lower-bound constants

struct AlphaBeta {
  double alpha;
  double beta;
};

/// Closed forms alpha = (1 + w/(2(p+1)))^{1/q} and
/// beta = 1 + w/(2(p+1)) (1 + (p+1)/(2p) K), K = split_constant(p).
[[nodiscard]] inline AlphaBeta alpha_beta(double gamma, HolderPair hp) {
  const double p = hp.p();
  if (!(p > 1.0)) throw DomainError("alpha/beta need p > 1");
  const double w = std::pow(gamma, 0.5 * p);
  const double base = w / (2.0 * (p + 1.0));
  return {std::pow(1.0 + base, 1.0 / hp.q()), 1.0 + base * (1.0 + (p + 1.0) / (2.0 * p) * split_constant(p))};
}

/// max over nodes y of ||s_y||^q and of int s_y, evaluated numerically.
struct NumericAlphaBeta {
  double alpha_q;  ///< max ||s_y||^q
  double beta;     ///< max int s_y
};

/// 257 equispaced nodes plus the last node of each branch (a and the next double after a).
[[nodiscard]] inline std::vector<double> alpha_beta_nodes(double p) {
  std::vector<double> ys;
  for (int i = 0; i <= 256; ++i) ys.push_back(i / 256.0);
  const double a = split_point(p);
  ys.push_back(a);
  ys.push_back(std::nextafter(a, 2.0));
  return ys;
}

[[nodiscard]] inline NumericAlphaBeta numeric_alpha_beta(double gamma, HolderPair hp, std::span<const double> nodes,
                                                         int order = 32) {
  NumericAlphaBeta out{0.0, 0.0};
  for (double y : nodes) {
    const auto s = s_function(gamma, hp.p(), y);
    out.alpha_q = std::max(out.alpha_q, std::pow(norm_1d(s, gamma, hp, order), hp.q()));
    out.beta = std::max(out.beta, s.integral());
  }
  return out;
}

struct LowerBoundIngredients {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> h_norms;
  std::vector<double> h_integrals;
};

/// Per-coordinate closed-form ingredients for the anchored Sobolev space.
[[nodiscard]] inline LowerBoundIngredients sobolev_ingredients(std::span<const double> gammas, HolderPair hp) {
  LowerBoundIngredients ing;
  for (double g : gammas) {
    const auto ab = alpha_beta(g, hp);
    ing.alpha.push_back(ab.alpha);
    ing.beta.push_back(ab.beta);
    ing.h_norms.push_back(h_worst_norm(g, hp));
    ing.h_integrals.push_back(h_worst_integral(g, hp.p()));
  }
  return ing;
}

/// min(prod h_norms / prod alpha, prod h_integrals / prod beta).
[[nodiscard]] inline double c_tilde(const LowerBoundIngredients& ing) {
  const std::size_t d = ing.alpha.size();
  if (ing.beta.size() != d || ing.h_norms.size() != d || ing.h_integrals.size() != d) {
    throw DimensionError("lower-bound ingredient vectors differ in length");
  }
  auto check = [](std::span<const double> v) {
    for (double x : v) {
      if (!(x > 0.0)) throw DomainError("lower-bound ingredients must be positive");
    }
  };
  check(ing.alpha);
  check(ing.beta);
  check(ing.h_norms);
  check(ing.h_integrals);
  if (d > kLogDomainThreshold) {
    double norm_ratio = 0.0;
    double int_ratio = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      norm_ratio += std::log(ing.h_norms[j]) - std::log(ing.alpha[j]);
      int_ratio += std::log(ing.h_integrals[j]) - std::log(ing.beta[j]);
    }
    return std::exp(std::min(norm_ratio, int_ratio));
  }
  double hn = 1.0, al = 1.0, hi = 1.0, be = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    hn *= ing.h_norms[j];
    al *= ing.alpha[j];
    hi *= ing.h_integrals[j];
    be *= ing.beta[j];
  }
  return std::min(hn / al, hi / be);
}

inline void check_eps_lower(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw DomainError("lower bounds need eps in (0, 1/2), got " + std::to_string(eps));
  }
}

/// c_tilde (1 - 2 eps).
[[nodiscard]] inline double lower_bound_complexity(const LowerBoundIngredients& ing, double eps) {
  check_eps_lower(eps);
  return c_tilde(ing) * (1.0 - 2.0 * eps);
}

}  // namespace wlpdisc
