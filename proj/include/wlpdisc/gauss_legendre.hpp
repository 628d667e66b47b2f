#pragma once

#include <boost/math/special_functions/legendre.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "wlpdisc/errors.hpp"

namespace wlpdisc {

/// Gauss–Legendre rule of a runtime order on [-1,1], mapped onto intervals on demand.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order) {
    if (order < 1) throw DomainError("Gauss-Legendre order must be >= 1, got " + std::to_string(order));
    const auto zeros = boost::math::legendre_p_zeros<double>(order);
    auto weight_at = [order](double x) {
      const double dp = boost::math::legendre_p_prime(order, x);
      return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    nodes_.reserve(static_cast<std::size_t>(order));
    weights_.reserve(static_cast<std::size_t>(order));
    // zeros are the non-negative roots in increasing order
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
      if (*it == 0.0) continue;
      nodes_.push_back(-*it);
      weights_.push_back(weight_at(*it));
    }
    for (double z : zeros) {
      nodes_.push_back(z);
      weights_.push_back(weight_at(z));
    }
  }

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

  /// sum_i w_i f(x_i) over [lo, hi].
  template <class F>
  [[nodiscard]] double integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(mid + half * nodes_[i]);
    return s * half;
  }

  /// Nodes and weights mapped onto [lo, hi].
  void map(double lo, double hi, std::vector<double>& x, std::vector<double>& w) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    x.resize(nodes_.size());
    w.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      x[i] = mid + half * nodes_[i];
      w[i] = half * weights_[i];
    }
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace wlpdisc
