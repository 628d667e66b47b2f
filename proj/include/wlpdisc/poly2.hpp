#pragma once

// Integration of tensor products of polynomials of degree <= 2 on [0,1],
// with the weighted norm
//
//   ||f||_{q,gamma}^q = ||f||_q^q + (||f'||_q^q + ||f''||_q^q) / gamma.
//
// The worst-case function is h = 1. Parabolas s_y(x) = 1 - c (x - y)^2 with
// c_j = u_q gamma_j^{1/(q-1)} fool positive rules and give
//
//   N(eps, d) >= (1 - 2 eps) prod_j (1 + gamma_j^{1/(q-1)} rho_q)^{1/q},
//   rho_q = u_q/12 - (2 u_q)^q (q+2)/(q+1),
//
// valid for any u_q strictly below u_threshold(q).

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wlpdisc/core.hpp"
#include "wlpdisc/gauss_legendre.hpp"
#include "wlpdisc/piecewise_poly.hpp"
#include "wlpdisc/sobolev.hpp"

namespace wlpdisc {

namespace detail {
inline void check_q_open(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("q must lie in (1, inf), got " + std::to_string(q));
}
}  // namespace detail

/// ((q+1) / ((q+2) 12 2^q))^{1/(q-1)}.
[[nodiscard]] inline double u_threshold(double q) {
  detail::check_q_open(q);
  return std::pow((q + 1.0) / ((q + 2.0) * 12.0 * std::pow(2.0, q)), 1.0 / (q - 1.0));
}

/// u/12 - (2u)^q (q+2)/(q+1), defined for 0 < u < u_threshold(q).
[[nodiscard]] inline double rho(double q, double u) {
  detail::check_q_open(q);
  const double limit = u_threshold(q);
  if (!(u > 0.0 && u < limit)) {
    throw DomainError("u_q = " + std::to_string(u) + " must lie in (0, " + std::to_string(limit) + ")");
  }
  return u / 12.0 - std::pow(2.0 * u, q) * (q + 2.0) / (q + 1.0);
}

/// Grid point maximizing rho over u = threshold * i / 1025, i = 1..1024.
[[nodiscard]] inline double best_u(double q) {
  const double limit = u_threshold(q);
  double best = 0.5 * limit;  // the default choice is always a candidate
  double best_rho = rho(q, best);
  for (int i = 1; i <= 1024; ++i) {
    const double u = limit * i / 1025.0;
    const double r = rho(q, u);
    if (r > best_rho) {
      best = u;
      best_rho = r;
    }
  }
  return best;
}

/// s(x) = 1 - c (x - y)^2 on a single segment.
[[nodiscard]] inline PiecewisePoly s_parabola(double y, double c) {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("node y must lie in [0,1]");
  if (!(c > 0.0 && c < 0.5)) throw DomainError("parabola coefficient c must lie in (0, 1/2)");
  return PiecewisePoly::single({1.0 - c * y * y, 2.0 * c * y, -c});
}

/// ||f||_{q,gamma}, all three integrals by Gauss–Legendre.
[[nodiscard]] inline double poly2_norm(const PiecewisePoly& f, double gamma, double q, int order = 32) {
  detail::check_q_open(q);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("weight gamma must lie in (0,1]");
  if (f.degree() > 2) throw DomainError("poly2_norm needs degree <= 2");
  const GaussLegendre gl(order);
  const auto d1 = f.derivative_segments();
  std::vector<Coeffs> d2;
  for (const auto& c : d1) d2.push_back(poly::derivative(c));
  const double value = f.integral_abs_pow(q, gl);
  const double slope = f.integral_abs_pow_of(d1, q, gl);
  const double curvature = f.integral_abs_pow_of(d2, q, gl);
  return std::pow(value + (slope + curvature) / gamma, 1.0 / q);
}

/// Validated (q, u_q, weights); u_q defaults to half the threshold.
class Poly2Config {
 public:
  Poly2Config(double q, WeightSequence weights, std::optional<double> u = std::nullopt)
      : q_(q), weights_(std::move(weights)) {
    detail::check_q_open(q);
    u_ = u.value_or(0.5 * u_threshold(q));
    rho_ = rho(q_, u_);
  }

  [[nodiscard]] double q() const { return q_; }
  [[nodiscard]] double u() const { return u_; }
  [[nodiscard]] double rho_value() const { return rho_; }
  [[nodiscard]] const WeightSequence& weights() const { return weights_; }

  /// c_j = u_q gamma_j^{1/(q-1)}, each checked to lie in (0, 1/2).
  [[nodiscard]] std::vector<double> coefficients(std::size_t d) const {
    const auto g = weights_.materialize(d);
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) {
      c[j] = u_ * std::pow(g[j], 1.0 / (q_ - 1.0));
      if (!(c[j] > 0.0 && c[j] < 0.5)) throw DomainError("parabola coefficient c_" + std::to_string(j + 1) + " outside (0,1/2)");
    }
    return c;
  }

 private:
  double q_;
  WeightSequence weights_;
  double u_ = 0.0;
  double rho_ = 0.0;
};

/// (1 - 2 eps) prod_j (1 + gamma_j^{1/(q-1)} rho_q)^{1/q}.
[[nodiscard]] inline double poly2_lower_bound(const Poly2Config& cfg, double eps, std::size_t d) {
  check_eps_lower(eps);
  const auto g = cfg.weights().materialize(d);
  (void)cfg.coefficients(d);  // validates every c_j
  const double q = cfg.q();
  double log_sum = 0.0;
  for (double gj : g) log_sum += std::log1p(std::pow(gj, 1.0 / (q - 1.0)) * cfg.rho_value());
  return (1.0 - 2.0 * eps) * std::exp(log_sum / q);
}

}  // namespace wlpdisc
