#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/offline.hpp"
#include "wpd/random.hpp"

using namespace wpd;

TEST(ComputeG, SingleSlot) {
  const double g[] = {2.5};
  auto G = compute_G(g, RateParams(3.0, 1.0));
  ASSERT_EQ(G.size(), 2u);
  EXPECT_DOUBLE_EQ(G[0], 2.5);
  EXPECT_EQ(G[1], 0.0);
}

TEST(ComputeG, SquareOrderSums) {
  const double g[] = {4.0, 1.0};
  auto G = compute_G(g, RateParams(2.0, 1.0));
  EXPECT_DOUBLE_EQ(G[0], 5.0);
  EXPECT_DOUBLE_EQ(G[1], 1.0);
}

TEST(ComputeG, ConstantGain) {
  for (double m : {2.0, 3.0})
    for (int k = 1; k <= 10; ++k) {
      std::vector<double> g(static_cast<std::size_t>(k), 0.7);
      auto G = compute_G(g, RateParams(m, 1.0));
      EXPECT_NEAR(G[0], std::pow(k, m - 1) * 0.7, 1e-12 * std::pow(k, m - 1)) << "m=" << m << " k=" << k;
    }
}

TEST(AllocateOffline, HandExample) {
  const double g[] = {4.0, 1.0};
  auto a = allocate_offline(10.0, g, RateParams(2.0, 1.0));
  EXPECT_NEAR(a.powers[0], 8.0, 1e-12);
  EXPECT_NEAR(a.powers[1], 2.0, 1e-12);
  EXPECT_NEAR(a.throughput, 7.0710678118654752, 1e-12);
  EXPECT_NEAR(offline_bits(10.0, a.g_table[0], RateParams(2.0, 1.0)), a.throughput, 1e-12);
}

TEST(AllocateOffline, ConstantGainSplitsEvenly) {
  std::vector<double> g(6, 1.3);
  auto a = allocate_offline(3.0, g, RateParams(3.0, 0.025));
  for (double p : a.powers) EXPECT_NEAR(p, 0.5, 1e-12);
}

TEST(AllocateOffline, ZeroGainSlotGetsNothing) {
  const double g[] = {1.0, 0.0, 2.0};
  auto a = allocate_offline(5.0, g, RateParams(3.0, 1.0));
  EXPECT_EQ(a.powers[1], 0.0);
  EXPECT_NEAR(a.powers[0] + a.powers[2], 5.0, 1e-12);
}

TEST(AllocateOffline, AllZeroWindow) {
  const double g[] = {0.0, 0.0, 0.0};
  auto a = allocate_offline(2.0, g, RateParams(2.0, 1.0));
  EXPECT_EQ(a.powers[0], 0.0);
  EXPECT_EQ(a.powers[1], 0.0);
  EXPECT_EQ(a.powers[2], 2.0);
  EXPECT_EQ(a.throughput, 0.0);
}

TEST(AllocateOffline, RejectsBadInput) {
  const double g[] = {1.0};
  EXPECT_THROW(allocate_offline(-1.0, g, RateParams(2.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(allocate_offline(1.0, std::span<const double>{}, RateParams(2.0, 1.0)), std::invalid_argument);
}

TEST(AllocateOffline, RandomInstancesInvariants) {
  Engine rng(11);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t k = 1 + uniform_index(rng, 8);
    std::vector<double> g(k);
    for (auto& x : g) x = uniform01(rng) < 0.2 ? 0.0 : 3.0 * uniform01(rng);
    const double m = 1.2 + 3.0 * uniform01(rng);
    const RateParams p(m, 0.01 + uniform01(rng));
    const double e = 10.0 * uniform01(rng);
    auto a = allocate_offline(e, g, p);
    double left = e, spent = 0.0, bits = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      EXPECT_GE(a.powers[t], 0.0);
      EXPECT_LE(a.powers[t], left * (1 + 1e-12));
      left -= a.powers[t];
      spent += a.powers[t];
      bits += rate(a.powers[t], g[t], p);
    }
    EXPECT_NEAR(spent, e, 1e-9 * std::max(e, 1.0));
    EXPECT_NEAR(bits, a.throughput, 1e-9 * std::max(bits, 1.0));
    EXPECT_NEAR(offline_bits(e, a.g_table[0], p), a.throughput, 1e-9 * std::max(bits, 1.0));
  }
}

TEST(AllocateOffline, BeatsRandomFeasibleSplits) {
  Engine rng(3);
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t k = 2 + uniform_index(rng, 4);
    std::vector<double> g(k);
    for (auto& x : g) x = 0.1 + 2.0 * uniform01(rng);
    const RateParams p(uniform01(rng) < 0.5 ? 2.0 : 3.0, 0.2);
    const double e = 4.0;
    const double best = allocate_offline(e, g, p).throughput;
    std::vector<double> w(k);
    for (int trial = 0; trial < 100000; ++trial) {
      double total = 0.0;
      for (auto& x : w) total += x = -std::log(1.0 - uniform01(rng));
      double bits = 0.0;
      for (std::size_t t = 0; t < k; ++t) bits += rate(e * w[t] / total, g[t], p);
      ASSERT_LE(bits, best * (1 + 1e-12));
    }
  }
}

TEST(OptimizeT0, TwoSlotsForced) {
  const double g[] = {1.0, 1.0};
  auto s = optimize_t0_offline(g, HarvestParams(1.0, 1.0, 1.0), RateParams(2.0, 1.0));
  EXPECT_EQ(s.t0, 2);
  EXPECT_DOUBLE_EQ(s.energy, 1.0);
}

TEST(OptimizeT0, DeterministicChannelClosedForm) {
  // Objective ∝ sqrt((t0-1)(T-t0+1)); maximized at floor((T+2)/2), ties low.
  for (int T = 2; T <= 30; ++T) {
    std::vector<double> g(static_cast<std::size_t>(T), 1.0);
    auto s = optimize_t0_offline(g, HarvestParams(0.5, 1.0, 1.0), RateParams(2.0, 1.0));
    EXPECT_EQ(s.t0, (T + 2) / 2) << "T=" << T;
  }
}

TEST(OptimizeT0, ResultDominatesEveryCandidate) {
  auto channel = discretize_rayleigh(5, 1.0);
  ChannelStream stream(channel, 77);
  for (int inst = 0; inst < 50; ++inst) {
    std::vector<double> g(20);
    for (auto& x : g) x = stream.sample();
    auto s = optimize_t0_offline(g, HarvestParams(0.1), RateParams(3.0, 0.025));
    ASSERT_EQ(s.objective.size(), 19u);
    for (double v : s.objective) EXPECT_LE(v, s.throughput * (1 + 1e-12));
    double spent = std::accumulate(s.powers.begin(), s.powers.end(), 0.0);
    EXPECT_NEAR(spent, s.energy, 1e-9 * s.energy);
  }
}

TEST(OptimizeT0, RejectsShortFrame) {
  const double g[] = {1.0};
  EXPECT_THROW(optimize_t0_offline(g, HarvestParams(1.0), RateParams(2.0, 1.0)), std::invalid_argument);
}
