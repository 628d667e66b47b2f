#pragma once

// Univariate continuous piecewise polynomials on [0,1].
//
// Coefficients are stored per segment in ascending powers of the global
// variable x (not shifted to the segment start). Everything the library
// evaluates this way has degree <= 8 on [0,1], where the monomial basis is
// well enough conditioned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "wlpdisc/errors.hpp"
#include "wlpdisc/gauss_legendre.hpp"

namespace wlpdisc {

using Coeffs = std::vector<double>;

namespace poly {

[[nodiscard]] inline double eval(const Coeffs& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

[[nodiscard]] inline Coeffs derivative(const Coeffs& c) {
  if (c.size() <= 1) return {0.0};
  Coeffs out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = static_cast<double>(k) * c[k];
  return out;
}

/// Exact integral over [lo, hi].
[[nodiscard]] inline double integral(const Coeffs& c, double lo, double hi) {
  double s_hi = 0.0;
  double s_lo = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    const double a = c[k] / static_cast<double>(k + 1);
    s_hi = s_hi * hi + a;
    s_lo = s_lo * lo + a;
  }
  return s_hi * hi - s_lo * lo;
}

[[nodiscard]] inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

[[nodiscard]] inline Coeffs scale(Coeffs c, double s) {
  for (double& v : c) v *= s;
  return c;
}

/// Index of the highest non-zero coefficient, 0 for the zero polynomial.
[[nodiscard]] inline std::size_t degree(const Coeffs& c) {
  for (std::size_t k = c.size(); k-- > 1;) {
    if (c[k] != 0.0) return k;
  }
  return 0;
}

/// (1 - x)^n expanded in monomials.
[[nodiscard]] inline Coeffs one_minus_x_pow(int n) {
  Coeffs out(static_cast<std::size_t>(n) + 1);
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    out[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return out;
}

/// Real roots in [lo, hi], found by isolating monotone pieces between the
/// roots of the derivative and bisecting sign changes. Roots of even
/// multiplicity are picked up when a critical value vanishes to within
/// `tol` (relative to the polynomial's scale on the interval).
[[nodiscard]] inline std::vector<double> roots_in(const Coeffs& c, double lo, double hi,
                                                   double tol = 1e-13) {
  const std::size_t deg = degree(c);
  std::vector<double> out;
  if (deg == 0) return out;
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  const double zero_tol = tol * std::max(scale, 1e-300);
  if (deg == 1) {
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  std::vector<double> knots{lo};
  for (double r : roots_in(derivative(c), lo, hi, tol)) {
    if (r > knots.back()) knots.push_back(r);
  }
  if (hi > knots.back()) knots.push_back(hi);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (std::abs(eval(c, knots[i])) <= zero_tol) out.push_back(knots[i]);
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double a = knots[i];
    double b = knots[i + 1];
    double fa = eval(c, a);
    const double fb = eval(c, b);
    if (std::abs(fa) <= zero_tol || std::abs(fb) <= zero_tol) continue;
    if ((fa < 0.0) == (fb < 0.0)) continue;
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = eval(c, m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Integral of |c(x)|^q over [lo, hi] by Gauss–Legendre with geometric
/// grading toward every zero of c, where |c|^q is not smooth.
[[nodiscard]] inline double integrate_abs_pow(const Coeffs& c, double q, double lo, double hi,
                                              const GaussLegendre& rule) {
  auto f = [&](double x) { return std::pow(std::abs(eval(c, x)), q); };
  if (hi <= lo) return 0.0;
  const bool smooth = q == std::floor(q) && std::fmod(q, 2.0) == 0.0;
  if (smooth || degree(c) == 0) return rule.integrate(f, lo, hi);

  constexpr double kRatio = 0.15;
  constexpr int kLevels = 24;
  // grade [a, b] toward a when toward_a, else toward b
  auto graded = [&](double a, double b, bool toward_a) {
    const double len = b - a;
    double s = 0.0;
    double outer = 1.0;
    for (int level = 0; level < kLevels; ++level) {
      const double inner = outer * kRatio;
      if (toward_a) {
        s += rule.integrate(f, a + len * inner, a + len * outer);
      } else {
        s += rule.integrate(f, b - len * outer, b - len * inner);
      }
      outer = inner;
    }
    s += toward_a ? rule.integrate(f, a, a + len * outer) : rule.integrate(f, b - len * outer, b);
    return s;
  };

  const auto zeros = roots_in(c, lo, hi);
  std::vector<double> knots{lo};
  for (double z : zeros) {
    if (z > knots.back() && z < hi) knots.push_back(z);
  }
  knots.push_back(hi);
  auto is_zero = [&](double x) {
    return std::any_of(zeros.begin(), zeros.end(), [x](double z) { return z == x; });
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const bool za = is_zero(a);
    const bool zb = is_zero(b);
    if (za && zb) {
      const double m = 0.5 * (a + b);
      total += graded(a, m, true) + graded(m, b, false);
    } else if (za) {
      total += graded(a, b, true);
    } else if (zb) {
      total += graded(a, b, false);
    } else {
      total += rule.integrate(f, a, b);
    }
  }
  return total;
}

}  // namespace poly

/// Continuous piecewise polynomial on [0,1].
class PiecewisePoly {
 public:
  static constexpr std::size_t kMaxDegree = 8;
  static constexpr double kContinuityTol = 1e-12;

  PiecewisePoly(std::vector<double> breakpoints, std::vector<Coeffs> segments)
      : breaks_(std::move(breakpoints)), segs_(std::move(segments)) {
    if (breaks_.size() < 2 || breaks_.front() != 0.0 || breaks_.back() != 1.0) {
      throw RepresentationError("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
      if (!(breaks_[i] > breaks_[i - 1])) throw RepresentationError("breakpoints must be strictly increasing");
    }
    if (segs_.size() + 1 != breaks_.size()) {
      throw RepresentationError("need one coefficient vector per interval");
    }
    for (auto& s : segs_) {
      if (s.empty()) s.push_back(0.0);
      if (poly::degree(s) > kMaxDegree) {
        throw RepresentationError("segment degree exceeds " + std::to_string(kMaxDegree));
      }
    }
    for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
      const double x = breaks_[i];
      const double left = poly::eval(segs_[i - 1], x);
      const double right = poly::eval(segs_[i], x);
      if (std::abs(left - right) > kContinuityTol * std::max(1.0, std::abs(left))) {
        throw RepresentationError("discontinuity at breakpoint " + std::to_string(x));
      }
    }
  }

  static PiecewisePoly single(Coeffs c) { return PiecewisePoly({0.0, 1.0}, {std::move(c)}); }
  static PiecewisePoly constant(double v) { return single({v}); }

  [[nodiscard]] const std::vector<double>& breakpoints() const { return breaks_; }
  [[nodiscard]] const std::vector<Coeffs>& segments() const { return segs_; }
  [[nodiscard]] std::size_t segment_count() const { return segs_.size(); }

  [[nodiscard]] std::size_t degree() const {
    std::size_t deg = 0;
    for (const auto& s : segs_) deg = std::max(deg, poly::degree(s));
    return deg;
  }

  /// Segment containing x; interior breakpoints belong to the right segment.
  [[nodiscard]] std::size_t segment_of(double x) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - breaks_.begin() - 1, 0));
    return std::min(idx, segs_.size() - 1);
  }

  [[nodiscard]] double operator()(double x) const { return poly::eval(segs_[segment_of(x)], x); }

  /// Derivative, one piece per segment. Not necessarily continuous, so it is
  /// returned as raw segments over the same breakpoints.
  [[nodiscard]] std::vector<Coeffs> derivative_segments() const {
    std::vector<Coeffs> out;
    out.reserve(segs_.size());
    for (const auto& s : segs_) out.push_back(poly::derivative(s));
    return out;
  }

  /// Exact integral over [0,1].
  [[nodiscard]] double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) s += poly::integral(segs_[i], breaks_[i], breaks_[i + 1]);
    return s;
  }

  /// Integral of |f|^q over [0,1], per segment Gauss–Legendre.
  [[nodiscard]] double integral_abs_pow(double q, const GaussLegendre& rule) const {
    return integral_abs_pow_of(segs_, q, rule);
  }

  /// Same for arbitrary per-segment pieces on these breakpoints (e.g. derivatives).
  [[nodiscard]] double integral_abs_pow_of(const std::vector<Coeffs>& pieces, double q,
                                           const GaussLegendre& rule) const {
    double s = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      s += poly::integrate_abs_pow(pieces[i], q, breaks_[i], breaks_[i + 1], rule);
    }
    return s;
  }

  [[nodiscard]] PiecewisePoly scaled(double s) const {
    auto segs = segs_;
    for (auto& c : segs) c = poly::scale(std::move(c), s);
    return PiecewisePoly(breaks_, std::move(segs));
  }

  [[nodiscard]] PiecewisePoly plus_constant(double v) const {
    auto segs = segs_;
    for (auto& c : segs) c[0] += v;
    return PiecewisePoly(breaks_, std::move(segs));
  }

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    std::vector<double> br;
    std::set_union(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
                   std::back_inserter(br));
    std::vector<Coeffs> segs;
    segs.reserve(br.size() - 1);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      const double mid = 0.5 * (br[i] + br[i + 1]);
      segs.push_back(poly::add(a.segs_[a.segment_of(mid)], b.segs_[b.segment_of(mid)]));
    }
    return PiecewisePoly(std::move(br), std::move(segs));
  }

 private:
  std::vector<double> breaks_;
  std::vector<Coeffs> segs_;
};

}  // namespace wlpdisc
