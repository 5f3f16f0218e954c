#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "clevy/random.hpp"
#include "clevy/stats.hpp"

using namespace clevy;

TEST(Random, StreamsAreReproducibleAndKeyed) {
  Stream a({42, 1, 7, 0}), b({42, 1, 7, 0}), c({42, 1, 8, 0}), d({42, 1, 7, 1});
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
  }
}

TEST(Random, UniformStaysInOpenUnitInterval) {
  Stream s({1, 2, 3, 4});
  RunningStats st;
  for (int i = 0; i < 200000; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    st.add(u);
  }
  EXPECT_NEAR(st.mean(), 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 200000));
  EXPECT_NEAR(st.variance(), 1.0 / 12.0, 1e-3);
}

TEST(Random, ExponentialMean) {
  Stream s({5, 0, 0, 0});
  RunningStats st;
  for (int i = 0; i < 200000; ++i) st.add(s.exponential(2.5));
  EXPECT_NEAR(st.mean(), 0.4, 4.0 * 0.4 / std::sqrt(200000.0));
}

TEST(Random, FamilyIdsDifferByLabel) {
  EXPECT_EQ(family_id("wick/even"), family_id("wick/even"));
  EXPECT_NE(family_id("wick/even"), family_id("wick/odd"));
}

TEST(Stats, MergeMatchesSequentialAccumulation) {
  Stream s({9, 9, 9, 9});
  RunningStats all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = s.uniform() * 10.0 - 3.0;
    all.add(x);
    (i < 377 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), all.count());
  EXPECT_NEAR(left.mean(), all.mean(), 1e-13);
  EXPECT_NEAR(left.variance(), all.variance(), 1e-11);
}

TEST(Stats, MergeWithEmptyIsIdentity) {
  RunningStats a, empty;
  a.add(1.0);
  a.add(3.0);
  a.merge(empty);
  EXPECT_EQ(a.count(), 2u);
  EXPECT_DOUBLE_EQ(a.mean(), 2.0);
  empty.merge(a);
  EXPECT_DOUBLE_EQ(empty.variance(), 2.0);
}

TEST(Stats, EnsembleIsIndependentOfThreadCount) {
  EnsembleConfig cfg;
  cfg.paths = 5000;
  cfg.chunks = 16;
  auto body = [](std::uint64_t i, std::span<double> out) {
    Stream s({3, 0, i, 0});
    out[0] = s.uniform();
    out[1] = out[0] * out[0];
  };
  setenv("CLEVY_THREADS", "1", 1);
  const auto one = run_ensemble(cfg, 2, body);
  setenv("CLEVY_THREADS", "4", 1);
  const auto four = run_ensemble(cfg, 2, body);
  unsetenv("CLEVY_THREADS");
  for (int q = 0; q < 2; ++q) {
    EXPECT_EQ(one[q].mean(), four[q].mean());
    EXPECT_EQ(one[q].variance(), four[q].variance());
  }
}
