#include <cmath>

#include <gtest/gtest.h>

#include "clevy/conv_process.hpp"
#include "clevy/errors.hpp"
#include "clevy/skorokhod.hpp"

using namespace clevy;

namespace {

JumpMeasure atoms() { return JumpMeasure::from_atoms({{1.0, 2.0}, {-1.0, 0.5}}); }

double pos_pow(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

}  // namespace

TEST(Skorokhod, QuadraticByHand) {
  const auto k = VolterraKernel::ornstein_uhlenbeck(0.5, 2.0);
  const JumpPath p({0.0, 2.0}, {{0.4, 1.0}, {1.1, -1.0}}, 0.0);
  const double T = 1.5;
  const double f1 = std::exp(-0.5 * 1.1), f2 = std::exp(-0.5 * 0.4);
  const double m = f1 - f2;
  EXPECT_NEAR(skorokhod_quadratic(k, p, T), 0.5 * (m * m - f1 * f1 - f2 * f2), 1e-15);
}

TEST(Skorokhod, MemoryCorrectionByHand) {
  const auto k = VolterraKernel::ornstein_uhlenbeck(0.5, 2.0);
  const JumpPath p({0.0, 2.0}, {{0.4, 1.0}, {1.1, -2.0}, {1.8, 1.0}}, 0.0);
  const double a = 1.2, b = 2.0;
  double ref = 0.0;
  for (auto [s, x] : {std::pair{0.4, 1.0}, std::pair{1.1, -2.0}}) {
    ref += k.eval(a, s) * (k.eval(b, s) - k.eval(a, s)) * x * x;
  }
  EXPECT_NEAR(memory_correction(k, p, a, b), ref, 1e-15);
  EXPECT_EQ(memory_correction(VolterraKernel::indicator(2.0), p, a, b), 0.0);
}

TEST(Skorokhod, CorrectionExpectationAtZeroEta) {
  const JumpMeasure mu = atoms();
  const auto k = VolterraKernel::shot_noise({0.0, 1.0}, 2.0);
  // ∫_0^a (a-s)(b-a) ds * var = (b - a) a^2/2 * 2.5
  EXPECT_NEAR(memory_correction_expectation(k, mu, 1.0, 1.5, EtaTest::zero()),
              0.5 * 0.5 * 2.5, 1e-12);
}

// Two jumps, g = 1 on [0, T]: both sides equal sum_j x_j f_T(s_j).
TEST(Skorokhod, WienerPairAgainstClosedForm) {
  const double T = 1.0;
  const auto g = SampledFunction::indicator(0.0, T);
  const JumpPath p({-20.0, T}, {{-2.0, -0.5}, {0.3, 1.0}}, 0.0);
  for (double d : {0.1, 0.25, 0.4}) {
    const auto k = VolterraKernel::fractional(d, 20.0);
    double ref = 0.0;
    for (const Jump& j : p.jumps()) {
      ref += j.size * (pos_pow(T - j.time, d) - pos_pow(-j.time, d)) / std::tgamma(1.0 + d);
    }
    const WienerPair w = wiener_type_equiv(g, k, p);
    EXPECT_NEAR(w.lhs, ref, 1e-10) << d;
    EXPECT_NEAR(w.rhs, ref, 1e-8) << d;
  }
}

TEST(Skorokhod, WienerPairWithDrift) {
  const auto g = SampledFunction::closed_form([](double x) { return std::exp(-x); }, {0.0, 1.0});
  const auto k = VolterraKernel::fractional(0.25, 20.0);
  const JumpPath p = simulate_path(atoms(), {-20.0, 1.0}, {4, 4, 4, 0});
  const WienerPair w = wiener_type_equiv(g, k, p);
  EXPECT_NEAR(w.lhs, w.rhs, 1e-5 * std::max(1.0, std::abs(w.lhs)));
}

TEST(Skorokhod, WienerPairContracts) {
  const JumpPath p({-20.0, 1.0}, {}, 0.0);
  const auto g = SampledFunction::indicator(0.0, 1.0);
  EXPECT_THROW(wiener_type_equiv(g, VolterraKernel::ornstein_uhlenbeck(0.5, 2.0), p),
               ContractError);
  EXPECT_THROW(wiener_type_equiv(SampledFunction::indicator(-1.0, 1.0),
                                 VolterraKernel::fractional(0.25), p),
               ContractError);
  EXPECT_THROW(wiener_type_equiv(g, VolterraKernel::fractional(0.25, 30.0), p), ContractError);
}

TEST(Skorokhod, ZeroMeanSuiteSmallEnsemble) {
  const JumpMeasure mu = atoms();
  const auto k = VolterraKernel::ornstein_uhlenbeck(0.5, 2.0);
  EnsembleConfig cfg;
  cfg.paths = 20000;
  cfg.family = family_id("unit-zero-mean");
  const auto rows = zero_expectation_suite(
      {functional_M(k, 1.0), functional_skorokhod_quadratic(k, 1.0)}, mu, cfg, 5.0);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.identity << " " << r.lhs;
}

TEST(Skorokhod, QuadraticStransformSmallEnsemble) {
  const JumpMeasure mu = atoms();
  const auto k = VolterraKernel::shot_noise({0.0, 1.0}, 2.0);
  EnsembleConfig cfg;
  cfg.paths = 20000;
  cfg.family = family_id("unit-quadratic");
  const auto r = quadratic_stransform_check(k, mu, 1.0, EtaTest::builtin(0.8, 1.0, EtaFlavor::Odd),
                                            cfg, 5.0);
  EXPECT_TRUE(r.pass) << r.lhs << " vs " << r.rhs << " se " << r.std_error;
}
