#include <cmath>
#include <complex>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "clevy/errors.hpp"
#include "clevy/levy.hpp"
#include "clevy/stats.hpp"

using namespace clevy;
using cd = std::complex<double>;

namespace {

JumpMeasure symmetric() { return JumpMeasure::from_atoms({{1.0, 0.5}, {-1.0, 0.5}}); }

// Closed form of the compensated CGMY exponent:
// C Gamma(-Y)[(M-iu)^Y - M^Y + (G+iu)^Y - G^Y] - iu C Gamma(1-Y)(M^{Y-1} - G^{Y-1}).
cd cgmy_exponent(double c, double g, double m, double y, double u) {
  const cd iu(0.0, u);
  const cd bracket = std::pow(m - iu, y) - std::pow(m, y) + std::pow(g + iu, y) - std::pow(g, y);
  return c * std::tgamma(-y) * bracket -
         iu * c * std::tgamma(1.0 - y) * (std::pow(m, y - 1.0) - std::pow(g, y - 1.0));
}

// Upper incomplete gamma for a in (-1, 0) by one downward recurrence step.
double upper_gamma_negative(double a, double x) {
  return (boost::math::tgamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

}  // namespace

TEST(Levy, CompensatedCisSmallArgument) {
  for (double z : {1e-8, 1e-3, 9e-3, 1.1e-2, 0.5, 3.0}) {
    const cd exact = std::exp(cd(0.0, z)) - 1.0 - cd(0.0, z);
    const cd got = compensated_cis(z);
    EXPECT_NEAR(got.real(), exact.real(), 1e-15 + 1e-12 * std::abs(exact.real()));
    // Taylor: Im = -z^3/6 + ..., avoid cancellation in the reference for tiny z
    const double im_ref = std::abs(z) < 1e-2 ? -z * z * z / 6.0 * (1.0 - z * z / 20.0 + z * z * z * z / 840.0) : exact.imag();
    EXPECT_NEAR(got.imag(), im_ref, 1e-12 * std::abs(im_ref) + 1e-300);
  }
}

TEST(Levy, AtomicExponentIsCosineMinusOne) {
  const JumpMeasure nu = symmetric();
  for (double u : {0.5, 1.0, 2.0}) {
    const cd psi = char_exponent(nu, u);
    EXPECT_NEAR(psi.real(), std::cos(u) - 1.0, 1e-15);
    EXPECT_NEAR(psi.imag(), 0.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(levy_variance(nu), 1.0);
  EXPECT_DOUBLE_EQ(nu.drift_rate(), 0.0);
}

TEST(Levy, AsymmetricAtomsCarryCompensatingDrift) {
  const JumpMeasure nu = JumpMeasure::from_atoms({{1.0, 2.0}, {-1.0, 0.5}});
  EXPECT_DOUBLE_EQ(nu.first_moment(), 1.5);
  EXPECT_DOUBLE_EQ(nu.drift_rate(), -1.5);
  const cd psi = char_exponent(nu, 0.7);
  const cd exact = 2.0 * (std::exp(cd(0, 0.7)) - 1.0) + 0.5 * (std::exp(cd(0, -0.7)) - 1.0) -
                   cd(0.0, 0.7 * 1.5);
  EXPECT_NEAR(std::abs(psi - exact), 0.0, 1e-14);
}

TEST(Levy, CgmyExponentFrozenValue) {
  const JumpMeasure nu = JumpMeasure::with_density({1.0, 3.0, 4.0, 0.5});
  const cd psi = char_exponent(nu, 1.3);
  // frozen from a 30-digit evaluation of the closed form
  EXPECT_NEAR(psi.real(), -0.2270854976567420, 1e-10);
  EXPECT_NEAR(psi.imag(), 0.0143633415808754, 1e-10);
}

TEST(Levy, CgmyExponentMatchesClosedFormAcrossParameters) {
  for (double y : {1e-4, 0.3, 0.9, 1.2, 1.7}) {
    const JumpMeasure nu = JumpMeasure::with_density({0.7, 2.0, 5.0, y});
    for (double u : {0.2, 1.0, 4.0}) {
      const cd psi = char_exponent(nu, u);
      const cd ref = cgmy_exponent(0.7, 2.0, 5.0, y, u);
      EXPECT_NEAR(std::abs(psi - ref), 0.0, 1e-8 * (1.0 + std::abs(ref))) << "y=" << y << " u=" << u;
    }
  }
}

TEST(Levy, DensityMomentsClosedFormVersusTruncatedQuadrature) {
  const TemperedStableDensity d{1.0, 3.0, 4.0, 0.5};
  const JumpMeasure full = JumpMeasure::with_density(d);
  EXPECT_NEAR(full.second_moment(),
              std::tgamma(1.5) * (std::pow(4.0, -1.5) + std::pow(3.0, -1.5)), 1e-13);
  // eps > 0 goes through quadrature; compare against incomplete gamma functions
  const double eps = 0.05;
  const JumpMeasure cut = JumpMeasure::with_density(d, eps);
  const double ref = boost::math::tgamma(1.5, 4.0 * eps) * std::pow(4.0, -1.5) +
                     boost::math::tgamma(1.5, 3.0 * eps) * std::pow(3.0, -1.5);
  EXPECT_NEAR(cut.second_moment(), ref, 1e-10);
  const double rate_ref = upper_gamma_negative(-0.5, 4.0 * eps) * std::pow(4.0, 0.5) +
                          upper_gamma_negative(-0.5, 3.0 * eps) * std::pow(3.0, 0.5);
  EXPECT_NEAR(cut.total_rate(), rate_ref, 1e-9 * rate_ref);
}

TEST(Levy, InfiniteMomentsAreReported) {
  const JumpMeasure nu = JumpMeasure::with_density({1.0, 3.0, 4.0, 1.5});
  EXPECT_TRUE(std::isinf(nu.abs_moment(1)));
  EXPECT_FALSE(nu.finite_activity());
  EXPECT_THROW(nu.first_moment(), PreconditionError);
  EXPECT_NO_THROW(nu.check_moments(4));
}

TEST(Levy, InvalidAtomsAreRejected) {
  EXPECT_THROW(JumpMeasure::from_atoms({{0.0, 1.0}}), ConfigError);
  EXPECT_THROW(JumpMeasure::from_atoms({{1.0, -1.0}}), ConfigError);
  EXPECT_TRUE(JumpMeasure::from_atoms({{1.0, 0.0}}).empty());
}

TEST(Levy, SimulatingInfiniteActivityIsAConfigError) {
  const JumpMeasure nu = JumpMeasure::with_density({1.0, 3.0, 4.0, 0.5});
  EXPECT_THROW(simulate_path(nu, {0.0, 1.0}, {1, 0, 0, 0}), ConfigError);
}

TEST(Levy, TruncationDiscardedVariance) {
  const TemperedStableDensity d{1.0, 3.0, 4.0, 0.5};
  const auto tr = truncate_small_jumps(JumpMeasure::with_density(d), 0.1);
  // ∫_{|x|<=eps} x^2 nu = lower incomplete gamma, one per side
  const double ref = boost::math::tgamma_lower(1.5, 0.4) * std::pow(4.0, -1.5) +
                     boost::math::tgamma_lower(1.5, 0.3) * std::pow(3.0, -1.5);
  EXPECT_NEAR(tr.discarded_variance, ref, 1e-12);
  EXPECT_TRUE(tr.measure.finite_activity());
  EXPECT_NEAR(levy_variance(tr.measure) + tr.discarded_variance,
              levy_variance(JumpMeasure::with_density(d)), 1e-10);
  EXPECT_THROW(truncate_small_jumps(symmetric(), 0.0), ContractError);
  const auto gone = truncate_small_jumps(symmetric(), 2.0);
  EXPECT_TRUE(gone.support_empty);
  EXPECT_FALSE(gone.warning.empty());
}

TEST(Levy, PathAccessorsAreRightContinuous) {
  const JumpPath p({-1.0, 2.0}, {{-0.5, 1.0}, {0.5, 2.0}, {1.5, -1.0}}, 0.0);
  EXPECT_DOUBLE_EQ(p.levy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(p.levy(0.5), 2.0);
  EXPECT_DOUBLE_EQ(p.levy_left(0.5), 0.0);
  EXPECT_DOUBLE_EQ(p.levy(2.0), 1.0);
  // two-sided: L(t) = -(jumps in (t, 0]) for t < 0
  EXPECT_DOUBLE_EQ(p.levy(-0.75), -1.0);
  EXPECT_DOUBLE_EQ(p.levy(-0.5), 0.0);
  EXPECT_DOUBLE_EQ(p.jump_sum(0.0, 1.5), 1.0);
  EXPECT_EQ(p.jump_count(-1.0, 2.0), 3u);
  EXPECT_THROW(JumpPath({0.0, 1.0}, {{2.0, 1.0}}, 0.0), ContractError);
  EXPECT_THROW(JumpPath({0.0, 1.0}, {{0.5, 1.0}, {0.5, 1.0}}, 0.0), ContractError);
}

TEST(Levy, DriftEntersLinearly) {
  const JumpPath p({-1.0, 1.0}, {{0.5, 1.0}}, -0.25);
  EXPECT_DOUBLE_EQ(p.levy(1.0), 1.0 - 0.25);
  EXPECT_DOUBLE_EQ(p.levy(-1.0), 0.25);
}

TEST(Levy, NestedWindowsGiveNestedPaths) {
  const JumpMeasure nu = JumpMeasure::from_atoms({{1.0, 2.0}, {-2.0, 1.0}});
  for (std::uint64_t i = 0; i < 50; ++i) {
    const JumpPath small = simulate_path(nu, {-1.0, 1.0}, {3, 4, i, 0});
    const JumpPath big = simulate_path(nu, {-3.0, 2.5}, {3, 4, i, 0});
    std::vector<Jump> inner;
    for (const Jump& j : big.jumps()) {
      if (j.time >= -1.0 && j.time <= 1.0) inner.push_back(j);
    }
    ASSERT_EQ(inner.size(), small.jumps().size());
    for (std::size_t k = 0; k < inner.size(); ++k) {
      EXPECT_EQ(inner[k].time, small.jumps()[k].time);
      EXPECT_EQ(inner[k].size, small.jumps()[k].size);
    }
  }
}

TEST(Levy, JumpCountsArePoisson) {
  const JumpMeasure nu = JumpMeasure::from_atoms({{1.0, 2.0}, {-2.0, 1.0}});
  RunningStats pos, neg, count;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const JumpPath p = simulate_path(nu, {-1.0, 2.0}, {11, 0, i, 0});
    count.add(static_cast<double>(p.jumps().size()));
    double up = 0;
    for (const Jump& j : p.jumps()) up += j.size > 0 ? 1 : 0;
    pos.add(up);
  }
  // rate 3 on a window of length 3
  EXPECT_NEAR(count.mean(), 9.0, 4.0 * count.stderr_of_mean());
  EXPECT_NEAR(count.variance(), 9.0, 0.3);
  EXPECT_NEAR(pos.mean(), 6.0, 4.0 * pos.stderr_of_mean());
}

TEST(Levy, TemperedStableSamplerMatchesTruncatedMeasure) {
  const TemperedStableDensity d{1.0, 3.0, 4.0, 0.5};
  const JumpMeasure nu = JumpMeasure::with_density(d, 0.05);
  Stream rng({21, 0, 0, 2});
  RunningStats x, x2, neg;
  for (int i = 0; i < 200000; ++i) {
    const double s = nu.sample_size(rng);
    ASSERT_GT(std::abs(s), 0.05);
    x.add(s);
    x2.add(s * s);
    neg.add(s < 0 ? 1.0 : 0.0);
  }
  const double rate = nu.total_rate();
  EXPECT_NEAR(x.mean(), nu.first_moment() / rate, 4.0 * x.stderr_of_mean());
  EXPECT_NEAR(x2.mean(), nu.second_moment() / rate, 4.0 * x2.stderr_of_mean());
  const double neg_rate =
      upper_gamma_negative(-0.5, 3.0 * 0.05) * std::pow(3.0, 0.5);
  EXPECT_NEAR(neg.mean(), neg_rate / rate, 4.0 * neg.stderr_of_mean());
}

TEST(Levy, ZeroStabilityIndexUsesExponentialProposal) {
  const JumpMeasure nu = JumpMeasure::with_density({2.0, 1.0, 1.5, 0.0}, 0.1);
  Stream rng({22, 0, 0, 2});
  RunningStats x2;
  for (int i = 0; i < 100000; ++i) {
    const double s = nu.sample_size(rng);
    x2.add(s * s);
  }
  EXPECT_NEAR(x2.mean(), nu.second_moment() / nu.total_rate(), 4.0 * x2.stderr_of_mean());
}
