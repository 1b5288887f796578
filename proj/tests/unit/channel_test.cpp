#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "wpd/channel.hpp"

using namespace wpd;

TEST(Channel, SortsAndMergesDuplicateGains) {
  ChannelModel m({{2.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.gain(0), 0.5);
  EXPECT_DOUBLE_EQ(m.gain(1), 2.0);
  EXPECT_DOUBLE_EQ(m.probability(1), 0.5);
}

TEST(Channel, RejectsBadLevels) {
  EXPECT_THROW(ChannelModel({}), std::invalid_argument);
  EXPECT_THROW(ChannelModel({{-1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(ChannelModel({{1.0, 0.0}, {2.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(ChannelModel({{1.0, 0.5}, {2.0, 0.4}}), std::invalid_argument);
}

TEST(Rayleigh, SingleLevelIsTheMean) {
  auto m = discretize_rayleigh(1, 1.0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m.gain(0), 1.0);
  EXPECT_DOUBLE_EQ(m.probability(0), 1.0);
}

TEST(Rayleigh, TwoLevelsMatchConditionalMeans) {
  // Conditional means of Exp(1) below and above the median, by quadrature.
  auto m = discretize_rayleigh(2, 1.0);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_NEAR(m.gain(0), 0.306852819440054690, 1e-12);
  EXPECT_NEAR(m.gain(1), 1.693147180559945309, 1e-12);
  EXPECT_DOUBLE_EQ(m.probability(0), 0.5);
}

TEST(Rayleigh, PreservesTheMean) {
  for (std::size_t n : {1u, 2u, 3u, 7u, 20u, 100u, 1000u})
    for (double mean : {0.3, 1.0, 4.0}) {
      auto m = discretize_rayleigh(n, mean);
      EXPECT_EQ(m.size(), n);
      EXPECT_NEAR(m.mean_gain(), mean, 1e-9 * mean) << n;
    }
}

TEST(Rayleigh, QBaseConvergesToContinuousMoment) {
  // E[g^(1/3)] for Exp(1) is Γ(4/3).
  const double gamma43 = 0.892979511569249211;
  auto m = discretize_rayleigh(100, 1.0);
  const double s = m.expectation([](double g) { return std::cbrt(g); });
  EXPECT_NEAR(s, 0.893170865932390694, 1e-10);
  EXPECT_LT(std::abs(s - gamma43) / gamma43, 0.01);
}

TEST(Rayleigh, RejectsBadArguments) {
  EXPECT_THROW(discretize_rayleigh(0, 1.0), std::invalid_argument);
  EXPECT_THROW(discretize_rayleigh(3, 0.0), std::invalid_argument);
}

TEST(GilbertElliot, DefaultProbability) {
  auto m = gilbert_elliot(0.6, 1.0, 0.0);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.gain(0), 0.0);
  EXPECT_DOUBLE_EQ(m.probability(0), 0.4);
  EXPECT_DOUBLE_EQ(m.gain(1), 1.0);
  EXPECT_DOUBLE_EQ(m.probability(1), 0.6);
  EXPECT_DOUBLE_EQ(m.mean_gain(), 0.6);
}

TEST(GilbertElliot, EqualGainsMerge) {
  auto m = gilbert_elliot(0.5, 2.0, 2.0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m.gain(0), 2.0);
  EXPECT_DOUBLE_EQ(m.probability(0), 1.0);
}

TEST(GilbertElliot, RejectsOutOfRangeProbability) {
  EXPECT_THROW(gilbert_elliot(0.0), std::invalid_argument);
  EXPECT_THROW(gilbert_elliot(1.0), std::invalid_argument);
  EXPECT_THROW(gilbert_elliot(-0.1), std::invalid_argument);
}

TEST(ChannelStream, SingleLevelAlwaysReturnsIt) {
  ChannelModel m({{0.7, 1.0}});
  ChannelStream s(m, 5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.sample(), 0.7);
  EXPECT_EQ(s.position(), 100u);
}

TEST(ChannelStream, SameSeedSameSequence) {
  auto m = discretize_rayleigh(20, 1.0);
  ChannelStream a(m, 42), b(m, 42), c(m, 43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.sample();
    EXPECT_EQ(x, b.sample());
    differs |= x != c.sample();
  }
  EXPECT_TRUE(differs);
}

TEST(ChannelStream, GilbertElliotFrequency) {
  auto m = gilbert_elliot(0.6);
  ChannelStream s(m, 2024);
  std::size_t good = 0;
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) good += s.sample() == 1.0;
  EXPECT_NEAR(static_cast<double>(good) / n, 0.6, 0.002);
}

TEST(ChannelStream, LevelFrequenciesMatchProbabilities) {
  ChannelModel m({{0.1, 0.2}, {1.0, 0.5}, {3.0, 0.3}});
  ChannelStream s(m, 9);
  std::size_t counts[3] = {0, 0, 0};
  const std::size_t n = 300000;
  for (std::size_t i = 0; i < n; ++i) ++counts[s.sample_level()];
  for (std::size_t k = 0; k < 3; ++k) {
    const double p = m.probability(k);
    EXPECT_NEAR(static_cast<double>(counts[k]) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
  }
}
