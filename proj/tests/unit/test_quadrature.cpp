#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

using namespace clevy;

TEST(Quadrature, EndpointSingularity) {
  EXPECT_NEAR(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-12);
}

TEST(Quadrature, HalfLineAndFullLine) {
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY), 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY),
              std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Quadrature, ReversedBoundsFlipSign) {
  auto f = [](double x) { return x * x; };
  EXPECT_NEAR(quad::integrate(f, 2.0, 0.0), -8.0 / 3.0, 1e-13);
}

TEST(Quadrature, PiecesSkipEmptyIntervals) {
  const std::vector<double> pts{0.0, 0.5, 0.5, 1.0};
  EXPECT_NEAR(quad::integrate_pieces([](double x) { return x < 0.5 ? 1.0 : 2.0; }, pts), 1.5,
              1e-13);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  EXPECT_THROW(quad::integrate([](double) { return NAN; }, 0.0, 1.0), NumericalError);
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const quad::Rule r = quad::gauss_legendre(-1.0, 3.0, 2);
  ASSERT_EQ(r.size(), 32u);
  // degree 31 is integrated exactly by 16-point panels
  const double got = quad::apply(r, [](double x) { return std::pow(x, 31); });
  EXPECT_NEAR(got / ((std::pow(3.0, 32) - 1.0) / 32.0), 1.0, 1e-13);
}

TEST(Quadrature, GaussLegendreLagsMeasuredFromUpperEnd) {
  const quad::Rule r = quad::gauss_legendre(1.0, 2.0, 3);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r.lags[i], 2.0 - r.nodes[i], 1e-15);
}

// ∫_a^b (t - a)^{d-1} dt = (b - a)^d / d; graded panels plus the analytic sliver.
TEST(Quadrature, GradedRuleResolvesWeakSingularityAwayFromOrigin) {
  for (double d : {0.1, 0.25, 0.4}) {
    const double a = 0.3, b = 1.0;
    const quad::Rule r = quad::graded(a, b, true, 0.2, 1e-15);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.lags[i], d - 1.0);
    const double rest = (b - a) * std::pow(0.2, static_cast<double>(r.size() / 16));
    acc += std::pow(rest, d) / d;
    EXPECT_NEAR(acc, std::pow(b - a, d) / d, 1e-11) << "d=" << d;
  }
}

TEST(Quadrature, GradedTowardUpperEnd) {
  const quad::Rule r = quad::graded(0.0, 2.0, false, 0.2, 1e-14);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] / std::sqrt(r.lags[i]);
  const double rest = 2.0 * std::pow(0.2, static_cast<double>(r.size() / 16));
  EXPECT_NEAR(acc + 2.0 * std::sqrt(rest), 2.0 * std::sqrt(2.0), 1e-12);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r.nodes[i], 2.0 - r.lags[i], 1e-15);
}
