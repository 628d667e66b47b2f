#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wlpdisc/poly2.hpp"

using namespace wlpdisc;

TEST(Poly2, Threshold) {
  EXPECT_NEAR(u_threshold(2.0), 1.0 / 64.0, 1e-17);
  EXPECT_NEAR(u_threshold(3.0), 0.091287092917527685576, 1e-15);
  EXPECT_THROW((void)u_threshold(1.0), DomainError);
}

TEST(Poly2, RhoExamples) {
  EXPECT_NEAR(rho(2.0, 1.0 / 128.0), 3.2552083333333333e-4, 1e-18);
  EXPECT_GT(rho(2.0, 1e-9), 0.0);
  EXPECT_LT(rho(2.0, 1e-9), 1e-9);
  EXPECT_THROW((void)rho(2.0, 1.0 / 64.0), DomainError);
  EXPECT_THROW((void)rho(2.0, 0.0), DomainError);
}

TEST(Poly2, RhoPositiveOnGrid) {
  for (int i = 0; i < 100; ++i) {
    const double q = 1.05 * std::pow(16.0 / 1.05, i / 99.0);
    EXPECT_GT(rho(q, 0.5 * u_threshold(q)), 0.0) << "q = " << q;
  }
}

TEST(Poly2, BestUBeatsDefault) {
  for (double q : {1.5, 2.0, 4.0}) {
    const double base = rho(q, 0.5 * u_threshold(q));
    EXPECT_GE(rho(q, best_u(q)), base * (1.0 - 1e-12));
  }
}

TEST(Poly2, ParabolaExamples) {
  const auto s = s_parabola(0.5, 0.4);
  EXPECT_DOUBLE_EQ(s(0.5), 1.0);
  EXPECT_NEAR(std::min(s(0.0), s(1.0)), 0.9, 1e-15);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double y = u(gen);
    const double c = 0.499 * u(gen) + 1e-6;
    const auto f = s_parabola(y, c);
    EXPECT_NEAR(f(y), 1.0, 1e-15);
    for (int i = 0; i <= 100; ++i) EXPECT_GE(f(i / 100.0), 0.5);
  }
  EXPECT_THROW((void)s_parabola(0.5, 0.5), DomainError);
}

TEST(Poly2, NormOfOne) {
  for (double q : {1.2, 2.0, 5.0}) {
    for (double g : {1.0, 0.3}) EXPECT_NEAR(poly2_norm(PiecewisePoly::constant(1.0), g, q), 1.0, 1e-15);
  }
  EXPECT_THROW((void)poly2_norm(PiecewisePoly::single({0, 0, 0, 1}), 1.0, 2.0), DomainError);
}

TEST(Poly2, NormHandValue) {
  // f = x: ||f||_2^2 = 1/3, ||f'||_2^2 = 1, f'' = 0
  EXPECT_NEAR(poly2_norm(PiecewisePoly::single({0.0, 1.0}), 0.5, 2.0), std::sqrt(1.0 / 3.0 + 2.0), 1e-14);
}

TEST(Poly2, BetaIsMaxIntegral) {
  for (double c : {0.01, 0.2, 0.45}) {
    double best = 0.0;
    for (int i = 0; i <= 1000; ++i) best = std::max(best, s_parabola(i / 1000.0, c).integral());
    EXPECT_NEAR(best, 1.0 - c / 12.0, 1e-10);
  }
}

TEST(Poly2, LqNormBelowIntegral) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GaussLegendre gl(32);
  for (int t = 0; t < 100; ++t) {
    const double q = 1.05 + 4.0 * u(gen);
    const auto f = s_parabola(u(gen), 0.49 * u(gen) + 0.001);
    EXPECT_LE(f.integral_abs_pow(q, gl), f.integral() + 1e-14);
  }
}

TEST(Poly2, LowerBoundExamples) {
  const Poly2Config cfg(2.0, WeightSequence::explicit_values({1.0}), 1.0 / 128.0);
  EXPECT_NEAR(poly2_lower_bound(cfg, 0.25, 1), 0.50008137358667272535, 1e-15);
  EXPECT_LT(poly2_lower_bound(cfg, 0.5 - 1e-12, 1), 1e-11);
}

TEST(Poly2, ConstantWeightsGrowExponentially) {
  const double q = 2.0, g = 0.5, eps = 0.1;
  const Poly2Config cfg(q, WeightSequence::constant(g));
  for (std::size_t d : {1U, 10U, 100U}) {
    const double expected = (1 - 2 * eps) * std::pow(1 + std::pow(g, 1 / (q - 1)) * cfg.rho_value(), d / q);
    EXPECT_NEAR(poly2_lower_bound(cfg, eps, d), expected, 1e-12 * expected);
  }
}

TEST(Poly2, ConfigValidation) {
  EXPECT_THROW(Poly2Config(2.0, WeightSequence::constant(1.0), 0.02), DomainError);
  EXPECT_THROW(Poly2Config(1.0, WeightSequence::constant(1.0)), DomainError);
  EXPECT_NEAR(Poly2Config(2.0, WeightSequence::constant(1.0)).u(), 1.0 / 128.0, 1e-18);
}
