#pragma once

// Domain types shared by every module: Hölder pairs, coordinate weights,
// point sets, positive quadrature rules, and the subset-product identity
//
//   sum over non-empty u of prod_{j in u} w_j f_j  =  prod_j (1 + w_j f_j) - 1
//
// that turns every sum over coordinate projections into an O(d) product.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wlpdisc/errors.hpp"

namespace wlpdisc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Products over more coordinates than this are accumulated in log domain.
inline constexpr std::size_t kLogDomainThreshold = 64;

// ---------------------------------------------------------------------------
// HolderPair

/// Conjugate exponents 1/p + 1/q = 1, stored through p alone.
class HolderPair {
 public:
  static HolderPair from_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw DomainError("Hölder exponent p must be finite and >= 1, got " + std::to_string(p));
    }
    return HolderPair(p);
  }

  static HolderPair from_q(double q) {
    if (!(q > 1.0)) throw DomainError("Hölder exponent q must lie in (1, inf], got " + std::to_string(q));
    if (std::isinf(q)) return HolderPair(1.0);
    return HolderPair(q / (q - 1.0));
  }

  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double q() const { return p_ == 1.0 ? kInfinity : p_ / (p_ - 1.0); }

 private:
  explicit HolderPair(double p) : p_(p) {}
  double p_;
};

[[nodiscard]] inline HolderPair holder_from_p(double p) { return HolderPair::from_p(p); }

/// True when p is an even integer >= 2.
[[nodiscard]] inline bool is_even_integer(double p) {
  return p >= 2.0 && p == std::floor(p) && std::fmod(p, 2.0) == 0.0 && p < 1e9;
}

// ---------------------------------------------------------------------------
// WeightSequence

enum class WeightFamily { Constant, Polynomial, Geometric, Logarithmic, InverseSqrtLog };

[[nodiscard]] inline std::string_view family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::Constant: return "constant";
    case WeightFamily::Polynomial: return "polynomial";
    case WeightFamily::Geometric: return "geometric";
    case WeightFamily::Logarithmic: return "logarithmic";
    case WeightFamily::InverseSqrtLog: return "inverse-sqrt-log";
  }
  return "?";
}

/// JSON key of the single parameter of each family.
[[nodiscard]] inline std::string_view family_parameter_key(WeightFamily f) {
  switch (f) {
    case WeightFamily::Constant: return "gamma";
    case WeightFamily::Polynomial: return "a";
    case WeightFamily::Geometric: return "theta";
    case WeightFamily::Logarithmic: return "c";
    case WeightFamily::InverseSqrtLog: return "c_hat";
  }
  return "?";
}

/// Coordinate weights gamma_1, gamma_2, ... in (0,1].
///
/// Either an explicit finite list, or one of five closed parametric
/// families (the classifier needs to know the tail analytically):
///   constant          gamma_j = gamma
///   polynomial        gamma_j = j^{-a}
///   geometric         gamma_j = theta^j
///   logarithmic       gamma_j = c / log(j+1)
///   inverse-sqrt-log  gamma_j = c_hat / sqrt(log(j+1))
/// A family whose first terms exceed 1 can still be classified (the verdict
/// only concerns the tail) but refuses to materialize.
class WeightSequence {
 public:
  struct Family {
    WeightFamily kind;
    double parameter;
  };

  static WeightSequence explicit_values(std::vector<double> values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double g = values[j];
      if (!(g > 0.0 && g <= 1.0)) {
        throw DomainError("weight gamma_" + std::to_string(j + 1) + " = " + std::to_string(g) +
                          " is outside (0,1]");
      }
    }
    return WeightSequence(std::move(values));
  }

  static WeightSequence family(WeightFamily kind, double parameter) {
    const bool ok = [&] {
      switch (kind) {
        case WeightFamily::Constant: return parameter > 0.0 && parameter <= 1.0;
        case WeightFamily::Polynomial: return parameter > 0.0 && std::isfinite(parameter);
        case WeightFamily::Geometric: return parameter > 0.0 && parameter < 1.0;
        case WeightFamily::Logarithmic:
        case WeightFamily::InverseSqrtLog: return parameter > 0.0 && std::isfinite(parameter);
      }
      return false;
    }();
    if (!ok) {
      throw DomainError(std::string(family_name(kind)) + " weight parameter " +
                        std::string(family_parameter_key(kind)) + " = " + std::to_string(parameter) +
                        " is out of range");
    }
    return WeightSequence(Family{kind, parameter});
  }

  static WeightSequence constant(double gamma) { return family(WeightFamily::Constant, gamma); }
  static WeightSequence polynomial(double a) { return family(WeightFamily::Polynomial, a); }
  static WeightSequence geometric(double theta) { return family(WeightFamily::Geometric, theta); }
  static WeightSequence logarithmic(double c) { return family(WeightFamily::Logarithmic, c); }
  static WeightSequence inverse_sqrt_log(double c_hat) {
    return family(WeightFamily::InverseSqrtLog, c_hat);
  }

  [[nodiscard]] bool is_explicit() const { return std::holds_alternative<std::vector<double>>(data_); }
  [[nodiscard]] const std::vector<double>& values() const { return std::get<std::vector<double>>(data_); }
  [[nodiscard]] const Family& family_spec() const { return std::get<Family>(data_); }

  /// Unchecked formula value of gamma_j, j >= 1.
  [[nodiscard]] double raw(std::size_t j) const {
    if (is_explicit()) return values().at(j - 1);
    const auto [kind, c] = family_spec();
    const double x = static_cast<double>(j);
    switch (kind) {
      case WeightFamily::Constant: return c;
      case WeightFamily::Polynomial: return std::pow(x, -c);
      case WeightFamily::Geometric: return std::pow(c, x);
      case WeightFamily::Logarithmic: return c / std::log(x + 1.0);
      case WeightFamily::InverseSqrtLog: return c / std::sqrt(std::log(x + 1.0));
    }
    return 0.0;
  }

  /// (gamma_1, ..., gamma_d), every entry checked to lie in (0,1].
  [[nodiscard]] std::vector<double> materialize(std::size_t d) const {
    if (d == 0) throw DomainError("materialize needs d >= 1");
    if (is_explicit() && d > values().size()) {
      throw DimensionError("explicit weight list has " + std::to_string(values().size()) +
                           " entries, " + std::to_string(d) + " requested");
    }
    std::vector<double> out(d);
    for (std::size_t j = 1; j <= d; ++j) {
      const double g = raw(j);
      if (!(g > 0.0 && g <= 1.0)) {
        throw DomainError("weight gamma_" + std::to_string(j) + " = " + std::to_string(g) +
                          " is outside (0,1]");
      }
      out[j - 1] = g;
    }
    return out;
  }

 private:
  explicit WeightSequence(std::vector<double> v) : data_(std::move(v)) {}
  explicit WeightSequence(Family f) : data_(f) {}

  std::variant<std::vector<double>, Family> data_;
};

[[nodiscard]] inline std::vector<double> materialize(const WeightSequence& w, std::size_t d) {
  return w.materialize(d);
}

/// gamma_j^{exponent} for every j, the per-coordinate weight of the subset sums.
[[nodiscard]] inline std::vector<double> powered(std::span<const double> gammas, double exponent) {
  std::vector<double> out(gammas.size());
  for (std::size_t j = 0; j < gammas.size(); ++j) out[j] = std::pow(gammas[j], exponent);
  return out;
}

// ---------------------------------------------------------------------------
// PointSet and QuadRule

/// n points in [0,1)^d, row-major. n = 0 is allowed.
class PointSet {
 public:
  PointSet(std::size_t d, std::vector<double> coords) : d_(d), coords_(std::move(coords)) {
    if (d_ == 0) throw DimensionError("point set dimension must be >= 1");
    if (coords_.size() % d_ != 0) {
      throw DimensionError("coordinate count " + std::to_string(coords_.size()) +
                           " is not a multiple of d = " + std::to_string(d_));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const double x = coords_[i];
      if (!(x >= 0.0 && x < 1.0)) {
        throw DomainError("coordinate " + std::to_string(x) + " of point " + std::to_string(i / d_) +
                          " is outside [0,1)");
      }
    }
  }

  static PointSet empty(std::size_t d) { return PointSet(d, {}); }

  [[nodiscard]] std::size_t d() const { return d_; }
  [[nodiscard]] std::size_t n() const { return coords_.size() / d_; }
  [[nodiscard]] std::span<const double> point(std::size_t k) const {
    return std::span<const double>(coords_).subspan(k * d_, d_);
  }
  [[nodiscard]] double operator()(std::size_t k, std::size_t j) const { return coords_[k * d_ + j]; }
  [[nodiscard]] const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t d_;
  std::vector<double> coords_;
};

/// Points with non-negative coefficients a_k; sum a_k f(x_k) approximates the integral.
class QuadRule {
 public:
  QuadRule(PointSet points, std::vector<double> coeffs)
      : points_(std::move(points)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != points_.n()) {
      throw DimensionError("rule has " + std::to_string(points_.n()) + " points but " +
                           std::to_string(coeffs_.size()) + " coefficients");
    }
    for (double a : coeffs_) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DomainError("quadrature coefficient " + std::to_string(a) + " is negative or not finite");
      }
    }
    const double equal = coeffs_.empty() ? 0.0 : 1.0 / static_cast<double>(coeffs_.size());
    qmc_ = !coeffs_.empty();
    for (double a : coeffs_) qmc_ = qmc_ && a == equal;
  }

  /// Equal coefficients 1/n.
  static QuadRule qmc(PointSet points) {
    const std::size_t n = points.n();
    std::vector<double> a(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
    return QuadRule(std::move(points), std::move(a));
  }

  static QuadRule empty(std::size_t d) { return QuadRule(PointSet::empty(d), {}); }

  [[nodiscard]] const PointSet& points() const { return points_; }
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::size_t d() const { return points_.d(); }
  [[nodiscard]] std::size_t n() const { return points_.n(); }
  /// Every coefficient is exactly 1/n, so the coefficients sum to one.
  [[nodiscard]] bool is_qmc() const { return qmc_; }

 private:
  PointSet points_;
  std::vector<double> coeffs_;
  bool qmc_ = false;
};

// ---------------------------------------------------------------------------
// Subset factorization

/// prod_j (1 + w_j f_j) - 1 for precomputed w_j = gamma_j^{exponent}.
/// Direct left-to-right product up to kLogDomainThreshold coordinates,
/// expm1(sum log1p) beyond.
[[nodiscard]] inline double subset_product_minus_one(std::span<const double> scaled,
                                                     std::span<const double> factors) {
  if (scaled.size() != factors.size()) {
    throw DimensionError("weights and factors differ in length");
  }
  if (scaled.size() > kLogDomainThreshold) {
    double log_sum = 0.0;
    bool positive = true;
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      const double t = scaled[j] * factors[j];
      if (!(t > -1.0)) {
        positive = false;
        break;
      }
      log_sum += std::log1p(t);
    }
    if (positive) return std::expm1(log_sum);
  }
  double prod = 1.0;
  for (std::size_t j = 0; j < scaled.size(); ++j) prod *= 1.0 + scaled[j] * factors[j];
  return prod - 1.0;
}

/// sum over non-empty u of prod_{j in u} gamma_j^{exponent} f_j.
[[nodiscard]] inline double subset_weighted_product(std::span<const double> gammas, double exponent,
                                                    std::span<const double> factors) {
  if (gammas.size() != factors.size()) {
    throw DimensionError("gammas and factors differ in length");
  }
  const auto scaled = powered(gammas, exponent);
  return subset_product_minus_one(scaled, factors);
}

/// exp(sum log x_j), for products of many factors close to one.
[[nodiscard]] inline double log_domain_product(std::span<const double> factors) {
  if (factors.size() <= kLogDomainThreshold) {
    double prod = 1.0;
    for (double f : factors) prod *= f;
    return prod;
  }
  double s = 0.0;
  for (double f : factors) s += std::log(f);
  return std::exp(s);
}

}  // namespace wlpdisc
