#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "clevy/errors.hpp"
#include "clevy/eta.hpp"
#include "clevy/stats.hpp"

using namespace clevy;

namespace {

JumpMeasure atoms() { return JumpMeasure::from_atoms({{1.0, 2.0}, {-2.0, 1.0}}); }

double p_even(double x) { return x * x * std::exp(-x * x); }
double p_odd(double x) { return x * x * x * std::exp(-x * x); }

}  // namespace

TEST(Eta, ProfileMaxima) {
  EXPECT_NEAR(profile_max(EtaFlavor::Even), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(profile_max(EtaFlavor::Odd), std::pow(1.5, 1.5) * std::exp(-1.5), 1e-15);
  double best = 0.0;
  for (int i = 0; i <= 40000; ++i) best = std::max(best, std::abs(p_odd(-4.0 + 2e-4 * i)));
  EXPECT_NEAR(best, profile_max(EtaFlavor::Odd), 1e-8);
}

TEST(Eta, AdmissibilityIsEnforced) {
  EXPECT_THROW(EtaTest::builtin(-1.5, 1.0, EtaFlavor::Even), ConfigError);
  EXPECT_THROW(EtaTest::builtin(3.0, 1.0, EtaFlavor::Odd), ConfigError);
  EXPECT_NO_THROW(EtaTest::builtin(2.0, 1.0, EtaFlavor::Odd));
  EXPECT_NO_THROW(EtaTest::field(-5.0, 1.0, EtaFlavor::Even));
  const EtaTest e = EtaTest::builtin(0.9, 0.5, EtaFlavor::Odd);
  EXPECT_GT(e.inf(), -1.0);
}

TEST(Eta, EvaluationAndTimeSupport) {
  const EtaTest e = EtaTest::builtin(0.8, 2.0, EtaFlavor::Even);
  EXPECT_NEAR(e(1.3, 0.7), 0.8 * p_even(1.3) * std::exp(-0.49 / 2.0), 1e-15);
  const double r = e.time_support().hi;
  EXPECT_LE(std::abs(e(1.0, r)), 1e-13 * (1.0 + 1e-9));
  EXPECT_NEAR(e.sup(), 0.8 * std::exp(-1.0), 1e-12);
  EXPECT_EQ(EtaTest::zero().id(), "zero");
}

TEST(Eta, CompensatorClosedForm) {
  const JumpMeasure mu = atoms();
  for (auto flavor : {EtaFlavor::Even, EtaFlavor::Odd}) {
    const EtaTest e = EtaTest::builtin(0.5, 1.5, flavor);
    const auto p = flavor == EtaFlavor::Even ? p_even : p_odd;
    const double ref = 0.5 * (2.0 * p(1.0) + 1.0 * p(-2.0)) * std::sqrt(std::numbers::pi * 1.5);
    EXPECT_NEAR(eta_compensator(e, mu), ref, 1e-12);
  }
}

TEST(Eta, PairingClosedFormAndSymmetry) {
  const JumpMeasure mu = atoms();
  const EtaTest a = EtaTest::builtin(0.5, 1.0, EtaFlavor::Even);
  const EtaTest b = EtaTest::builtin(-0.3, 2.0, EtaFlavor::Odd);
  // ∫ q_a q_b dt = sqrt(pi w_a w_b / (w_a + w_b))
  const double xb = 2.0 * p_even(1.0) * p_odd(1.0) + p_even(-2.0) * p_odd(-2.0);
  const double ref = 0.5 * -0.3 * xb * std::sqrt(std::numbers::pi * 2.0 / 3.0);
  EXPECT_NEAR(eta_pairing(a, b, mu), ref, 1e-12);
  EXPECT_NEAR(eta_pairing(b, a, mu), ref, 1e-12);
}

TEST(Eta, WickWeightLogAndProductAgree) {
  const JumpMeasure mu = atoms();
  const EtaTest e = EtaTest::builtin(0.7, 1.0, EtaFlavor::Even);
  const WickWeight w(e, mu);
  const double r = e.time_support().hi;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const JumpPath p = simulate_path(mu, {-r, r}, {3, 4, i, 0});
    double prod = std::exp(-w.compensator());
    for (const Jump& j : p.jumps()) prod *= 1.0 + e(j.size, j.time);
    EXPECT_NEAR(w(p), prod, 1e-12 * prod);
    EXPECT_NEAR(w.product(p), prod, 1e-12 * prod);
  }
}

TEST(Eta, WickWeightNeedsCoveringWindow) {
  const JumpMeasure mu = atoms();
  const WickWeight w(EtaTest::builtin(0.7, 1.0, EtaFlavor::Even), mu);
  const JumpPath p = simulate_path(mu, {0.0, 1.0}, {3, 4, 0, 0});
  EXPECT_THROW(w(p), ContractError);
}

TEST(Eta, WickWeightHasUnitMean) {
  const JumpMeasure mu = atoms();
  const EtaTest e = EtaTest::builtin(0.7, 1.0, EtaFlavor::Odd);
  const WickWeight w(e, mu);
  const double r = e.time_support().hi;
  EnsembleConfig cfg;
  cfg.paths = 20000;
  const auto s = run_ensemble(cfg, 1, [&](std::uint64_t i, std::span<double> out) {
    out[0] = w(simulate_path(mu, {-r, r}, {11, 12, i, 0}));
  });
  EXPECT_LT(std::abs(s[0].mean() - 1.0), 5.0 * s[0].stderr_of_mean());
}

// Under Q_eta the expected number of jumps of size x in [-R, R] is
// lambda_x ∫ (1 + eta(x, t)) dt.
TEST(Eta, ShiftedSimulationIntensity) {
  const JumpMeasure mu = atoms();
  const EtaTest e = EtaTest::builtin(0.9, 1.0, EtaFlavor::Even);
  const double r = e.time_support().hi;
  EnsembleConfig cfg;
  cfg.paths = 20000;
  const auto s = run_ensemble(cfg, 2, [&](std::uint64_t i, std::span<double> out) {
    const JumpPath p = simulate_path_shifted(mu, e, {-r, r}, {5, 6, i, 0});
    out[0] = 0.0;
    out[1] = 0.0;
    for (const Jump& j : p.jumps()) out[j.size > 0.0 ? 0 : 1] += 1.0;
  });
  const double tq = std::sqrt(std::numbers::pi);
  const double ref_pos = 2.0 * (2.0 * r + 0.9 * p_even(1.0) * tq);
  const double ref_neg = 1.0 * (2.0 * r + 0.9 * p_even(-2.0) * tq);
  EXPECT_LT(std::abs(s[0].mean() - ref_pos), 5.0 * s[0].stderr_of_mean());
  EXPECT_LT(std::abs(s[1].mean() - ref_neg), 5.0 * s[1].stderr_of_mean());
}
