#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"

using namespace wpd;

TEST(Rate, UnitArgument) {
  RateParams p(3.0, 0.025);
  EXPECT_DOUBLE_EQ(rate(0.025, 1.0, p), 1.0);
  EXPECT_DOUBLE_EQ(rate(0.0, 1.0, p), 0.0);
}

TEST(Rate, FigureTwoParameters) {
  EXPECT_NEAR(rate(8.0, 1.0, RateParams(3.0, 0.025)), 6.839903786706788, 1e-12);
}

TEST(Rate, OnlyProductMatters) {
  RateParams p(2.5, 0.3);
  for (double c : {0.1, 2.0, 17.0}) EXPECT_NEAR(rate(3.0 * c, 0.8 / c, p), rate(3.0, 0.8, p), 1e-12);
}

TEST(Rate, ConcaveAndIncreasing) {
  for (double m : {1.5, 2.0, 3.0, 5.0}) {
    RateParams p(m, 0.1);
    const double h = 0.01;
    for (int i = 1; i < 500; ++i) {
      const double x = i * h;
      const double a = rate(x - h, 1.3, p), b = rate(x, 1.3, p), c = rate(x + h, 1.3, p);
      EXPECT_GT(c, b);
      EXPECT_LT(a + c - 2 * b, 0.0);
    }
  }
}

TEST(Rate, RejectsNegatives) {
  RateParams p(3.0, 1.0);
  EXPECT_THROW(rate(-1.0, 1.0, p), std::invalid_argument);
  EXPECT_THROW(rate(1.0, -1.0, p), std::invalid_argument);
}

TEST(RateParams, Validation) {
  EXPECT_THROW(RateParams(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RateParams(0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(RateParams(2.0, 0.0), std::invalid_argument);
  RateParams p(3.0, 2.0);
  EXPECT_DOUBLE_EQ(p.share_exponent(), 0.5);
  EXPECT_DOUBLE_EQ(p.q_power(), 1.5);
}

TEST(Harvest, DefaultSlot) {
  HarvestParams h(dbm_to_watts(20.0), 1.0, 1e-3);
  EXPECT_NEAR(harvest(1.0, h), 1e-4, 1e-18);
  EXPECT_EQ(harvest(0.0, h), 0.0);
  HarvestParams half(dbm_to_watts(20.0), 0.5, 1e-3);
  for (double g : {0.3, 1.0, 2.2}) EXPECT_DOUBLE_EQ(harvest(g, half), 0.5 * harvest(g, h));
}

TEST(Harvest, Validation) {
  EXPECT_THROW(HarvestParams(0.0), std::invalid_argument);
  EXPECT_THROW(HarvestParams(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(HarvestParams(1.0, 1.5), std::invalid_argument);
}

TEST(Harvest, Levels) {
  auto m = gilbert_elliot(0.6, 2.0, 0.5);
  auto e = harvest_levels(m, HarvestParams(1.0, 0.5, 1.0));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_DOUBLE_EQ(e[0], 0.25);
  EXPECT_DOUBLE_EQ(e[1], 1.0);
}

TEST(Units, DbmConversion) {
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watts(20.0), 0.1, 1e-16);
  EXPECT_NEAR(dbm_to_watts(0.0), 1e-3, 1e-18);
}
