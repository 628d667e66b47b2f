#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wlpdisc/discrepancy.hpp"

using namespace wlpdisc;

namespace {

PointSet random_points(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n * d);
  for (auto& v : x) v = u(gen);
  return PointSet(d, std::move(x));
}

// L^p for even p by explicit subsets and all n^m ordered index tuples:
// int over [0,1]^u of (sum_k a_k 1[x_k < t] - prod t)^p, expanded binomially.
double naive_power(const QuadRule& rule, const std::vector<double>& g, int p) {
  const std::size_t d = rule.d();
  const std::size_t n = rule.n();
  double total = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    double wu = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask >> j & 1U) wu *= std::pow(g[j], 0.5 * p);
    }
    double term = 0.0;
    double binom = 1.0;
    for (int m = 0; m <= p; ++m) {
      if (m > 0) binom = binom * (p - m + 1) / m;
      const int e = p - m;
      const double sign = e % 2 == 0 ? 1.0 : -1.0;
      std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
      double sum_m = 0.0;
      const std::size_t tuples = m == 0 ? 1 : static_cast<std::size_t>(std::pow(n, m));
      for (std::size_t t = 0; t < tuples; ++t) {
        std::size_t rest = t;
        double a = 1.0;
        std::vector<double> mx(d, 0.0);
        for (int i = 0; i < m; ++i) {
          const std::size_t k = rest % n;
          rest /= n;
          a *= rule.coeffs()[k];
          for (std::size_t j = 0; j < d; ++j) mx[j] = std::max(mx[j], rule.points()(k, j));
        }
        double integral = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
          if (mask >> j & 1U) integral *= (1.0 - std::pow(mx[j], e + 1)) / (e + 1);
        }
        sum_m += a * integral;
      }
      if (m > 0 && n == 0) sum_m = 0.0;
      term += binom * sign * sum_m;
    }
    total += wu * term;
  }
  double s = 0.0;
  for (double a : rule.coeffs()) s += a;
  return total + (rule.is_qmc() ? 0.0 : std::pow(std::abs(s - 1.0), p));
}

}  // namespace

TEST(LocalDiscrepancy, Examples) {
  EXPECT_DOUBLE_EQ(local_discrepancy(PointSet(1, {0.5}), std::vector<double>{1.0}), 0.0);
  EXPECT_DOUBLE_EQ(local_discrepancy(PointSet(1, {0.25, 0.75}), std::vector<double>{0.5}), 0.0);
  EXPECT_DOUBLE_EQ(local_discrepancy(PointSet(1, {0.25, 0.75}), std::vector<double>{0.75}), -0.25);
  EXPECT_THROW((void)local_discrepancy(PointSet(1, {0.5}), std::vector<double>{1.5}), DomainError);
  EXPECT_THROW((void)local_discrepancy(PointSet(1, {0.5}), std::vector<double>{0.5, 0.5}), DimensionError);
}

TEST(LocalDiscrepancy, GeneralizedExamples) {
  EXPECT_DOUBLE_EQ(generalized_local_discrepancy(QuadRule(PointSet(1, {0.5}), {1.0}), std::vector<double>{1.0}), 0.0);
  EXPECT_NEAR(generalized_local_discrepancy(QuadRule::empty(2), std::vector<double>{0.3, 0.4}), -0.12, 1e-15);
  EXPECT_DOUBLE_EQ(generalized_local_discrepancy(QuadRule(PointSet(1, {0.2}), {0.5}), std::vector<double>{0.5}), 0.0);
}

TEST(InitialDiscrepancy, Examples) {
  const auto p2 = holder_from_p(2.0);
  EXPECT_NEAR(initial_discrepancy(WeightSequence::explicit_values({1.0}), 1, p2), 1.1547005383792515, 1e-15);
  EXPECT_NEAR(initial_discrepancy(WeightSequence::explicit_values({1.0, 0.25}), 2, p2), 1.2018504251546631, 1e-15);
}

TEST(ExactEvenP, HandExamples) {
  const std::vector<double> g{1.0};
  EXPECT_NEAR(exact_even_p(PointSet(1, {0.0}), g, 2.0).value, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(exact_even_p(PointSet(1, {0.5}), g, 2.0).value, 0.28867513459481287, 1e-15);
}

TEST(ExactEvenP, RejectsNonEvenP) {
  const std::vector<double> g{1.0};
  EXPECT_THROW((void)exact_even_p(PointSet(1, {0.5}), g, 3.0), UnsupportedExponentError);
  EXPECT_THROW((void)exact_even_p(PointSet(1, {0.5}), g, 2.5), UnsupportedExponentError);
}

TEST(ExactEvenP, MatchesNaiveExpansionOracle) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t d = 1 + trial % 3;
    const int p = trial % 2 == 0 ? 2 : 4;
    const auto pts = random_points(gen, n, d);
    std::vector<double> g(d);
    for (auto& x : g) x = 0.1 + 0.9 * u(gen);
    const auto r = exact_even_p(pts, g, p);
    const double oracle = naive_power(QuadRule::qmc(pts), g, p);
    EXPECT_NEAR(r.power, oracle, 1e-12 * std::max(1.0, oracle));
  }
}

TEST(ExactEvenP, GeneralizedMatchesOracleWithArbitraryCoefficients) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t d = 1 + trial % 3;
    const int p = trial % 3 == 0 ? 4 : 2;
    std::vector<double> a(n);
    for (auto& x : a) x = 1.5 * u(gen);
    const QuadRule rule(random_points(gen, n, d), a);
    std::vector<double> g(d);
    for (auto& x : g) x = 0.1 + 0.9 * u(gen);
    const double oracle = naive_power(rule, g, p);
    EXPECT_NEAR(generalized_exact_even_p(rule, g, p).power, oracle, 1e-12 * std::max(1.0, oracle));
  }
}

TEST(ExactEvenP, QmcReductionIsBitIdentical) {
  std::mt19937_64 gen(8);
  const auto pts = random_points(gen, 9, 3);
  const std::vector<double> g{1.0, 0.5, 0.25};
  EXPECT_EQ(exact_even_p(pts, g, 4.0).value, generalized_exact_even_p(QuadRule::qmc(pts), g, 4.0).value);
}

TEST(ExactEvenP, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 gen(9);
  const auto pts = random_points(gen, 40, 4);
  const std::vector<double> g{1.0, 0.7, 0.5, 0.3};
  const double one = exact_even_p(pts, g, 4.0, 1).value;
  EXPECT_EQ(one, exact_even_p(pts, g, 4.0, 3).value);
  EXPECT_EQ(one, exact_even_p(pts, g, 4.0, 8).value);
}

TEST(ExactEvenP, EmptyRuleReproducesInitialDiscrepancy) {
  const std::vector<double> g{1.0, 0.5, 0.25};
  for (double p : {2.0, 4.0}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const std::span<const double> gd(g.data(), d);
      EXPECT_NEAR(generalized_exact_even_p(QuadRule::empty(d), gd, p).value,
                  initial_discrepancy(gd, holder_from_p(p)), 1e-10);
    }
  }
}

TEST(ExactEvenP, CoefficientTwoMatchesQuadrature) {
  const QuadRule rule(PointSet(1, {0.5}), {2.0});
  const std::vector<double> g{1.0};
  EXPECT_NEAR(generalized_exact_even_p(rule, g, 2.0).value, lp_quadrature(rule, g, holder_from_p(2.0)).value, 1e-8);
}

TEST(ExactEvenP, MonotoneInEachWeight) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_points(gen, 5, 3);
    std::vector<double> g{0.2 + 0.7 * u(gen), 0.2 + 0.7 * u(gen), 0.2 + 0.7 * u(gen)};
    const double base = exact_even_p(pts, g, 2.0).value;
    for (std::size_t j = 0; j < 3; ++j) {
      auto h = g;
      h[j] += 0.05;
      EXPECT_GE(exact_even_p(pts, h, 2.0).value, base);
    }
  }
}

TEST(Quadrature, HandIntegralOddP) {
  const std::vector<double> g{1.0};
  EXPECT_NEAR(lp_quadrature(QuadRule::qmc(PointSet(1, {0.0})), g, holder_from_p(3.0)).value, std::cbrt(0.25), 1e-12);
}

TEST(Quadrature, EmptyRuleAnyP) {
  const std::vector<double> g{1.0, 0.5, 0.25};
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.5}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const std::span<const double> gd(g.data(), d);
      EXPECT_NEAR(lp_quadrature(QuadRule::empty(d), gd, holder_from_p(p)).value, initial_discrepancy(gd, holder_from_p(p)),
                  1e-10);
    }
  }
}

TEST(Quadrature, AgreesWithExactForEvenP) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = random_points(gen, 5, 2);
    const std::vector<double> g{1.0, 0.5};
    EXPECT_NEAR(lp_quadrature(QuadRule::qmc(pts), g, holder_from_p(2.0)).value, exact_even_p(pts, g, 2.0).value, 1e-10);
  }
  const auto pts = random_points(gen, 6, 3);
  const std::vector<double> g{1.0, 0.5, 0.25};
  EXPECT_NEAR(lp_quadrature(QuadRule::qmc(pts), g, holder_from_p(4.0)).value, exact_even_p(pts, g, 4.0).value, 1e-8);
}

TEST(Quadrature, NonIntegerPConvergesInOrder) {
  std::mt19937_64 gen(22);
  const auto pts = random_points(gen, 7, 2);
  const std::vector<double> g{0.8, 0.6};
  const auto hp = holder_from_p(2.5);
  // |.|^p has a kink where the local discrepancy changes sign, so convergence is algebraic
  const double lo = lp_quadrature(QuadRule::qmc(pts), g, hp, 16).value;
  const double mid = lp_quadrature(QuadRule::qmc(pts), g, hp, 32).value;
  const double hi = lp_quadrature(QuadRule::qmc(pts), g, hp, 64).value;
  EXPECT_NEAR(mid, hi, 1e-8);
  EXPECT_LE(std::abs(mid - hi), std::abs(lo - hi));
}

TEST(Quadrature, RefusesHighDimension) {
  const std::vector<double> g(9, 1.0);
  EXPECT_THROW((void)lp_quadrature(QuadRule::qmc(PointSet(9, std::vector<double>(9, 0.5))), g, holder_from_p(3.0)),
               CapacityError);
}

TEST(MonteCarlo, HandExampleWithinThreeSigma) {
  const std::vector<double> g{1.0};
  const auto r = lp_monte_carlo(QuadRule::qmc(PointSet(1, {0.0})), g, holder_from_p(2.0), 1000000, 17);
  ASSERT_TRUE(r.std_error.has_value());
  EXPECT_NEAR(r.value, 1.0 / std::sqrt(3.0), 3.0 * *r.std_error);
  EXPECT_EQ(r.method, DiscrepancyMethod::MonteCarlo);
}

TEST(MonteCarlo, InvariantToThreadCount) {
  std::mt19937_64 gen(23);
  const auto pts = random_points(gen, 10, 5);
  const std::vector<double> g(5, 0.5);
  const auto a = lp_monte_carlo(QuadRule::qmc(pts), g, holder_from_p(3.0), 50000, 99, 1);
  const auto b = lp_monte_carlo(QuadRule::qmc(pts), g, holder_from_p(3.0), 50000, 99, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(MonteCarlo, UnbiasedOverSeeds) {
  std::mt19937_64 gen(24);
  const auto pts = random_points(gen, 6, 3);
  const std::vector<double> g{1.0, 0.5, 0.25};
  const double exact = exact_even_p(pts, g, 2.0).power;
  double mean = 0.0, var = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    const auto r = lp_monte_carlo(QuadRule::qmc(pts), g, holder_from_p(2.0), 2000, static_cast<std::uint64_t>(s), 1);
    mean += r.power;
    var += *r.power_std_error * *r.power_std_error;
  }
  mean /= seeds;
  const double pooled = std::sqrt(var) / seeds;
  EXPECT_LE(std::abs(mean - exact), 4.0 * pooled);
}

TEST(MonteCarlo, RejectsTooFewSamples) {
  const std::vector<double> g{1.0};
  EXPECT_THROW((void)lp_monte_carlo(QuadRule::qmc(PointSet(1, {0.5})), g, holder_from_p(2.0), 10, 1), DomainError);
}

TEST(Reflection, Examples) {
  EXPECT_EQ(reflect(PointSet(2, {0.25, 0.75})), PointSet(2, {0.75, 0.25}));
  EXPECT_EQ(reflect(PointSet(1, {0.0}))(0, 0), std::nextafter(1.0, 0.0));
}

TEST(Reflection, KernelIdentityP2) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const std::size_t n = 1 + trial % 16;
    const auto pts = random_points(gen, n, d);
    std::vector<double> g(d);
    for (auto& x : g) x = 0.05 + 0.95 * u(gen);
    EXPECT_NEAR(qmc_worst_case_error_p2(pts, g), exact_even_p(reflect(pts), g, 2.0).value, 1e-12);
  }
}

TEST(Reflection, NearOnePointHasErrorOfOrigin) {
  const std::vector<double> g{1.0};
  EXPECT_NEAR(qmc_worst_case_error_p2(PointSet(1, {std::nextafter(1.0, 0.0)}), g), 1.0 / std::sqrt(3.0), 1e-8);
}

TEST(Reflection, SmallWeightLimit) {
  const std::vector<double> a{1e-3}, b{1e-4};
  const PointSet pts(1, {0.3});
  const double ea = std::pow(qmc_worst_case_error_p2(pts, a), 2);
  const double eb = std::pow(qmc_worst_case_error_p2(pts, b), 2);
  EXPECT_NEAR(ea / eb, 10.0, 1e-3);
}

TEST(DiscrepancyResult, InvariantsPerMethod) {
  const std::vector<double> g{1.0, 0.5};
  const PointSet pts(2, {0.1, 0.2, 0.6, 0.7});
  const auto e = exact_even_p(pts, g, 2.0);
  const auto q = lp_quadrature(QuadRule::qmc(pts), g, holder_from_p(2.0));
  const auto m = lp_monte_carlo(QuadRule::qmc(pts), g, holder_from_p(2.0), 1000, 1);
  for (const auto& r : {e, q, m}) {
    EXPECT_GE(r.value, 0.0);
    EXPECT_EQ(r.std_error.has_value(), r.method == DiscrepancyMethod::MonteCarlo);
    EXPECT_EQ(r.d, 2U);
    EXPECT_EQ(r.n, 2U);
  }
}
