#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/constants/constants.hpp>

#include "qbasis/specfun.hpp"

using namespace qbasis;

TEST(Hermite, LowDegreeCoefficients) {
  const std::vector<std::vector<int>> expected{{1}, {0, 2}, {-2, 0, 4}, {0, -12, 0, 8}, {12, 0, -48, 0, 16}};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    const auto c = hermite_coeffs(static_cast<int>(n));
    ASSERT_EQ(c.size(), expected[n].size());
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c[k], BigInt(expected[n][k])) << "n=" << n << " k=" << k;
  }
}

TEST(Hermite, RecurrenceHoldsExactly) {
  // H_{n+1} = 2x H_n - 2n H_{n-1}
  for (int n = 1; n < 40; ++n) {
    const auto a = hermite_coeffs(n + 1);
    const auto b = hermite_coeffs(n);
    const auto c = hermite_coeffs(n - 1);
    for (std::size_t k = 0; k < a.size(); ++k) {
      BigInt rhs = 0;
      if (k >= 1 && k - 1 < b.size()) rhs += 2 * b[k - 1];
      if (k < c.size()) rhs -= 2 * n * c[k];
      EXPECT_EQ(a[k], rhs);
    }
  }
}

TEST(Hermite, OrthonormalValuesMatchClosedForms) {
  const double norm2 = 1.0 / std::sqrt(8.0 * std::sqrt(std::numbers::pi));
  for (double x : {-1.3, 0.0, 0.7, 2.5}) {
    EXPECT_NEAR(orthonormal_hermite(2, x).value(), (4 * x * x - 2) * norm2, 1e-14);
    EXPECT_NEAR(orthonormal_hermite(0, x).value(), std::pow(std::numbers::pi, -0.25), 1e-15);
  }
  EXPECT_TRUE(orthonormal_hermite(1, 0.0).is_zero());
}

TEST(Hermite, LargeDegreeStaysFinite) {
  for (int n : {200, 500, 1000}) {
    const LogMagnitude v = orthonormal_hermite(n, 3.0);
    EXPECT_TRUE(std::isfinite(v.log_value())) << n;
  }
}

TEST(Factorial, LogValues) {
  EXPECT_NEAR(log_factorial(0), 0.0, 0.0);
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-12);
  EXPECT_NEAR(log_factorial(170), std::lgamma(171.0), 1e-9);
  EXPECT_NEAR(log_hermite_normalizer(3), -0.5 * std::log(8.0 * 6.0 * std::sqrt(std::numbers::pi)), 1e-14);
}

TEST(Legendre, ClosedForms) {
  for (double x : {-0.9, 0.2, 1.0, 2.0 / std::sqrt(3.0)}) {
    EXPECT_NEAR(legendre_eval(2, x), (3 * x * x - 1) / 2, 1e-14);
    EXPECT_NEAR(legendre_eval(3, x), (5 * x * x * x - 3 * x) / 2, 1e-14);
  }
}

TEST(Legendre, LogRouteAgreesWithDirect) {
  const double x = 2.0 / std::sqrt(3.0);
  for (int n = 0; n <= 60; ++n) {
    const double direct = legendre_eval(n, x);
    EXPECT_NEAR(legendre_log(n, x).value() / direct, 1.0, 1e-12) << n;
  }
}

TEST(Legendre, GrowthRateLimit) {
  const double x = 2.0 / std::sqrt(3.0);
  EXPECT_NEAR(legendre_growth_rate(4000, x), std::log(x + std::sqrt(x * x - 1)), 1e-3);
  EXPECT_NEAR(std::exp(2 * std::log(x + std::sqrt(x * x - 1))), 3.0, 1e-12);
}

TEST(Quadrature, WeightsSumToRootPi) {
  for (int m = 1; m <= 60; ++m) {
    const QuadratureRule r = gauss_hermite(m);
    double s = 0.0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, std::sqrt(std::numbers::pi), 1e-13) << m;
  }
}

TEST(Quadrature, EvenMomentsExact) {
  // int x^{2k} exp(-x^2) = Gamma(k + 1/2), exact for 2k <= 2m - 1
  for (int m = 1; m <= 25; ++m) {
    const QuadratureRule r = gauss_hermite(m);
    for (int k = 0; 2 * k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * k);
      EXPECT_NEAR(s / std::tgamma(k + 0.5), 1.0, 1e-11) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Quadrature, NodesSymmetricAndLogWeightsConsistent) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> pick(2, 300);
  for (int t = 0; t < 10; ++t) {
    const int m = pick(gen);
    const QuadratureRule r = gauss_hermite(m);
    ASSERT_EQ(static_cast<int>(r.nodes.size()), m);
    for (int i = 0; i < m; ++i) {
      EXPECT_NEAR(r.nodes[i], -r.nodes[m - 1 - i], 1e-12 * (1 + std::abs(r.nodes[i])));
      if (i > 0) {
        EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
      }
      if (r.weights[i] > 0) {
        EXPECT_NEAR(r.log_weights[i], std::log(r.weights[i]), 1e-10 * std::abs(r.log_weights[i]) + 1e-12);
      }
    }
  }
}

TEST(Quadrature, WideRuleAgreesWithDouble) {
  const QuadratureRule d = gauss_hermite(30);
  const WideQuadratureRule& w = gauss_hermite_wide(30);
  ASSERT_EQ(w.nodes.size(), d.nodes.size());
  Wide total = 0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    EXPECT_NEAR(w.nodes[i].convert_to<double>(), d.nodes[i], 1e-13);
    total += w.weights[i];
  }
  EXPECT_LT(boost::multiprecision::abs(total - boost::multiprecision::sqrt(boost::math::constants::pi<Wide>())),
            Wide("1e-40"));
}

TEST(LogMagnitude, Arithmetic) {
  const LogMagnitude a = LogMagnitude::from_value(-3.0);
  const LogMagnitude b = LogMagnitude::from_value(2.0);
  EXPECT_NEAR((a * b).value(), -6.0, 1e-14);
  EXPECT_NEAR((a / b).value(), -1.5, 1e-14);
  EXPECT_NEAR((a + b).value(), -1.0, 1e-14);
  EXPECT_TRUE((a + LogMagnitude::from_value(3.0)).is_zero());
  EXPECT_TRUE(LogMagnitude::zero().is_zero());
}
