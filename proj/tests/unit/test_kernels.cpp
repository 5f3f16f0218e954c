#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "clevy/errors.hpp"
#include "clevy/kernels.hpp"

using namespace clevy;

TEST(Kernels, VolterraPropertyAndWindow) {
  for (const auto& k : {VolterraKernel::ornstein_uhlenbeck(0.5, 2.0),
                        VolterraKernel::shot_noise({1.0, -0.5, 0.25}, 2.0),
                        VolterraKernel::indicator(2.0), VolterraKernel::fractional(0.25)}) {
    EXPECT_EQ(k.eval(1.0, 1.0 + 1e-12), 0.0) << k.name();
    EXPECT_EQ(k.eval(1.0, 3.0), 0.0) << k.name();
    EXPECT_EQ(k.eval(0.0, -0.5), 0.0) << k.name();
    EXPECT_EQ(k.eval(1.0, k.s_lower() - 1e-9), 0.0) << k.name();
  }
  EXPECT_EQ(VolterraKernel::ornstein_uhlenbeck(0.5, 2.0).eval(2.5, 1.0), 0.0);
}

TEST(Kernels, OrnsteinUhlenbeckClosedForms) {
  const auto k = VolterraKernel::ornstein_uhlenbeck(0.5, 2.0);
  EXPECT_DOUBLE_EQ(k.eval(1.5, 0.5), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(k.diag(1.0), 1.0);
  EXPECT_NEAR(k.ddt(1.5, 0.5), -0.5 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(k.integral(1.0), 2.0 * (1.0 - std::exp(-0.5)), 1e-14);
  EXPECT_NEAR(k.integral_dt(1.0), std::exp(-0.5), 1e-14);
  EXPECT_NEAR(k.l2norm_sq(1.0), (1.0 - std::exp(-1.0)), 1e-12);
}

TEST(Kernels, ShotNoiseNormAtUnitTime) {
  const auto k = VolterraKernel::shot_noise({0.0, 1.0}, 2.0);
  EXPECT_NEAR(k.l2norm_sq(1.0), 1.0 / 3.0, 1e-13);
  EXPECT_DOUBLE_EQ(k.diag(0.7), 0.0);
  EXPECT_NEAR(k.integral(1.5), 1.125, 1e-14);
}

TEST(Kernels, IntegralAgreesWithQuadrature) {
  const auto k = VolterraKernel::shot_noise({1.0, -0.5, 0.25}, 3.0);
  // integral(t) = ∫_0^t k(t - s) ds by hand: t - t^2/4 + t^3/12
  for (double t : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(k.integral(t), t - t * t / 4.0 + t * t * t / 12.0, 1e-13);
    const double h = 1e-5;
    EXPECT_NEAR(k.integral_dt(t), (k.integral(t + h) - k.integral(t - h)) / (2 * h), 1e-8);
  }
}

TEST(Kernels, FractionalNormClosedFormFrozenValues) {
  EXPECT_NEAR(fractional_l2norm_sq_exact(0.1, 1.0), 0.9543109885318444, 1e-13);
  EXPECT_NEAR(fractional_l2norm_sq_exact(0.25, 1.0), 1.0638460810704871, 1e-13);
  EXPECT_NEAR(fractional_l2norm_sq_exact(0.4, 1.0), 1.9302629045847699, 1e-13);
  // self-similarity t^{2d+1}
  EXPECT_NEAR(fractional_l2norm_sq_exact(0.25, 2.0),
              std::pow(2.0, 1.5) * fractional_l2norm_sq_exact(0.25, 1.0), 1e-12);
}

// ∫_{-20}^1 f_1(s)^2 ds, high-precision reference values.
TEST(Kernels, FractionalTruncatedNormFrozenValues) {
  const double ref[] = {0.953078259399642948, 1.030240336261131973, 1.374817741823075211};
  const double ds[] = {0.1, 0.25, 0.4};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(VolterraKernel::fractional(ds[i], 20.0).l2norm_sq(1.0), ref[i], 1e-10);
    EXPECT_LT(VolterraKernel::fractional(ds[i], 20.0).l2norm_sq(1.0),
              fractional_l2norm_sq_exact(ds[i], 1.0));
  }
}

TEST(Kernels, FractionalValuesAndDerivative) {
  const double d = 0.25;
  const auto k = VolterraKernel::fractional(d);
  const double g1 = std::tgamma(1.0 + d);
  EXPECT_NEAR(k.eval(1.0, 0.5), std::pow(0.5, d) / g1, 1e-15);
  EXPECT_NEAR(k.eval(1.0, -0.5), (std::pow(1.5, d) - std::pow(0.5, d)) / g1, 1e-15);
  EXPECT_NEAR(k.ddt(1.0, 0.5), std::pow(0.5, d - 1.0) / std::tgamma(d), 1e-14);
  EXPECT_EQ(k.diag(1.0), 0.0);
  EXPECT_THROW(k.ddt_lag(1.0, 0.0), SingularPointError);
  EXPECT_THROW(VolterraKernel::fractional(0.5), ConfigError);
  EXPECT_THROW(VolterraKernel::fractional(0.0), ConfigError);
}

TEST(Kernels, HypothesisFlags) {
  EXPECT_TRUE(check_hypotheses(VolterraKernel::ornstein_uhlenbeck(0.5, 2.0)).result.all());
  EXPECT_TRUE(check_hypotheses(VolterraKernel::shot_noise({0.0, 1.0}, 2.0)).result.all());
  EXPECT_TRUE(check_hypotheses(VolterraKernel::indicator(2.0)).result.all());
  const HypothesisReport flp = check_hypotheses(VolterraKernel::fractional(0.25));
  EXPECT_FALSE(flp.result.h4);
  EXPECT_TRUE(flp.result.h3);
  EXPECT_FALSE(flp.witnesses.empty());
}

TEST(Kernels, CustomKernelWithSingularDerivativeFailsH4) {
  auto f = [](double t, double s) { return std::sqrt(t - s); };
  auto ddt = [](double t, double s) { return 0.5 / std::sqrt(t - s); };
  const auto k = VolterraKernel::custom(f, ddt, 2.0, "sqrt");
  EXPECT_FALSE(k.flags().h4);
  const auto smooth = VolterraKernel::custom(
      [](double t, double s) { return std::exp(-(t - s)) * (1.0 + s); },
      [](double t, double s) { return -std::exp(-(t - s)) * (1.0 + s); }, 2.0, "smooth");
  EXPECT_TRUE(smooth.flags().all());
}

TEST(Kernels, TabulatedKernelReproducesSmoothTable) {
  std::vector<double> v;
  const double h = 0.05;
  for (int i = 0; i <= 60; ++i) v.push_back(std::exp(-0.5 * h * i));
  const auto k = VolterraKernel::tabulated(v, h, 3.0, "ou-table");
  const auto ou = VolterraKernel::ornstein_uhlenbeck(0.5, 3.0);
  for (double s : {0.0, 0.31, 0.777, 1.5}) EXPECT_NEAR(k.eval(2.0, s), ou.eval(2.0, s), 1e-5);
  EXPECT_NEAR(k.l2norm_sq(2.0), ou.l2norm_sq(2.0), 1e-5);
  EXPECT_TRUE(k.flags().all());
  EXPECT_THROW(VolterraKernel::tabulated(v, h, 4.0), ConfigError);
}

TEST(Kernels, BreakpointsAreSortedInsideSupport) {
  const auto k = VolterraKernel::fractional(0.1, 3.0);
  const auto pts = k.breakpoints(1.0);
  ASSERT_GE(pts.size(), 2u);
  EXPECT_EQ(pts.front(), -3.0);
  EXPECT_EQ(pts.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}
