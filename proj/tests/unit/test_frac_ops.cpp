#include <cmath>

#include <gtest/gtest.h>

#include "clevy/errors.hpp"
#include "clevy/frac_ops.hpp"
#include "clevy/kernels.hpp"

using namespace clevy;

namespace {

double pos_pow(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

}  // namespace

// I_-^d chi_{[0,1]}(x) = [(1 - x)_+^d - (-x)_+^d] / Gamma(1 + d)
TEST(FracOps, RightSidedIntegralOfIndicator) {
  const auto chi = SampledFunction::indicator(0.0, 1.0);
  for (double d : {0.1, 0.25, 0.4, 0.8}) {
    for (double x : {-7.0, -1.0, -0.2, -1e-6, 0.0, 0.4, 0.999, 1.0, 1.5}) {
      const double ref = (pos_pow(1.0 - x, d) - pos_pow(-x, d)) / std::tgamma(1.0 + d);
      EXPECT_NEAR(frac_int_minus(chi, d, x), ref, 1e-10) << "d=" << d << " x=" << x;
    }
  }
}

// I_+^d chi_{[0,1]}(x) = [x_+^d - (x - 1)_+^d] / Gamma(1 + d)
TEST(FracOps, LeftSidedIntegralOfIndicator) {
  const auto chi = SampledFunction::indicator(0.0, 1.0);
  for (double d : {0.1, 0.25, 0.4}) {
    for (double x : {-1.0, 0.0, 1e-7, 0.3, 1.0, 2.0, 9.0}) {
      const double ref = (pos_pow(x, d) - pos_pow(x - 1.0, d)) / std::tgamma(1.0 + d);
      EXPECT_NEAR(frac_int_plus(chi, d, x), ref, 1e-10) << "d=" << d << " x=" << x;
    }
  }
}

TEST(FracOps, ReversedIndicatorIsNegative) {
  const auto a = SampledFunction::indicator(0.0, 1.0);
  const auto b = SampledFunction::indicator(1.0, 0.0);
  EXPECT_EQ(b(0.5), -1.0);
  EXPECT_NEAR(frac_int_minus(a, 0.3, -0.4), -frac_int_minus(b, 0.3, -0.4), 1e-14);
}

TEST(FracOps, MatchesFractionalKernel) {
  for (double d : {0.1, 0.25, 0.4}) {
    const auto k = VolterraKernel::fractional(d, 20.0);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto chi = SampledFunction::indicator(0.0, t);
      for (double s : {-19.0, -3.0, -0.1, 0.0, 0.3 * t, 0.99 * t}) {
        EXPECT_NEAR(frac_int_minus(chi, d, s), k.eval(t, s), 1e-10);
      }
    }
  }
}

// I_-^d of a power: ∫_x^∞ e^{-t}(t-x)^{d-1}dt / Gamma(d) = e^{-x} on [0, ∞).
TEST(FracOps, ExponentialIsAnEigenfunction) {
  const auto g = SampledFunction::closed_form([](double x) { return std::exp(-x); },
                                              {-30.0, INFINITY});
  for (double d : {0.2, 0.45}) {
    for (double x : {-1.0, 0.0, 2.0}) EXPECT_NEAR(frac_int_minus(g, d, x), std::exp(-x), 1e-9);
  }
}

TEST(FracOps, GridFunctionInterpolatesLinearly) {
  const auto g = SampledFunction::grid(0.0, 0.5, {0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(g(0.25), 0.5);
  EXPECT_DOUBLE_EQ(g(0.75), 0.5);
  EXPECT_EQ(g(-0.1), 0.0);
  EXPECT_EQ(g(1.1), 0.0);
}

TEST(FracOps, IntegrationByParts) {
  const auto bump = SampledFunction::closed_form(
      [](double x) { return std::abs(x) < 1.0 ? 1.0 - x * x : 0.0; }, {-1.0, 1.0});
  const auto box = SampledFunction::indicator(0.0, 1.5);
  for (double d : {0.1, 0.25, 0.4}) {
    const FracPartsResult r = frac_parts_check(bump, box, d);
    EXPECT_LT(r.residual, 1e-8) << "d=" << d;
    EXPECT_GT(std::abs(r.lhs), 0.1);
  }
}

TEST(FracOps, IntegrationByPartsNeedsCompactSupport) {
  const auto g = SampledFunction::closed_form([](double x) { return std::exp(-x); },
                                              {0.0, INFINITY});
  EXPECT_THROW(frac_parts_check(g, SampledFunction::indicator(0.0, 1.0), 0.3), ContractError);
}

TEST(FracOps, ZeroFunction) {
  EXPECT_EQ(frac_int_minus(SampledFunction::zero(), 0.3, 1.0), 0.0);
  EXPECT_TRUE(SampledFunction::zero().is_zero());
}
