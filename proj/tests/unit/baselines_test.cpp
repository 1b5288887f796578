#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "wpd/baselines.hpp"
#include "wpd/channel.hpp"

using namespace wpd;

TEST(Baselines, ParseAndName) {
  EXPECT_EQ(parse_baseline("uniform"), BaselineKind::uniform);
  EXPECT_EQ(parse_baseline("power_halving"), BaselineKind::power_halving);
  EXPECT_FALSE(parse_baseline("greedy").has_value());
  EXPECT_EQ(to_string(BaselineKind::power_halving), "power_halving");
}

TEST(Baselines, UniformSingleSlotSpendsEverything) {
  ChannelModel ch({{1.0, 1.0}});
  ChannelStream s(ch, 1);
  auto tr = run_baseline(BaselineKind::uniform, 6, s, HarvestParams(1.0, 1.0, 1.0), RateParams(2.0, 1.0), 6);
  EXPECT_DOUBLE_EQ(tr.energy_at_t0, 5.0);
  EXPECT_DOUBLE_EQ(tr.slots.back().action, 5.0);
}

TEST(Baselines, PowerHalvingHandExample) {
  ChannelModel ch({{1.0, 1.0}});
  ChannelStream s(ch, 1);
  auto tr = run_baseline(BaselineKind::power_halving, 5, s, HarvestParams(2.0, 1.0, 1.0), RateParams(2.0, 1.0), 7);
  ASSERT_DOUBLE_EQ(tr.energy_at_t0, 8.0);
  EXPECT_DOUBLE_EQ(tr.slots[4].action, 4.0);
  EXPECT_DOUBLE_EQ(tr.slots[5].action, 2.0);
  EXPECT_DOUBLE_EQ(tr.slots[6].action, 2.0);
}

TEST(Baselines, UniformEnergyFallsByAConstant) {
  auto ch = discretize_rayleigh(8, 1.0);
  const HarvestParams h(0.1);
  ChannelStream s(ch, 3);
  auto tr = run_baseline(BaselineKind::uniform, 4, s, h, RateParams(3.0, 0.025), 12);
  const double step = tr.energy_at_t0 / 9.0;
  for (int t = 4; t <= 12; ++t) EXPECT_NEAR(tr.slots[static_cast<std::size_t>(t - 1)].action, step, 1e-15);
  EXPECT_TRUE(check_energy_conservation(tr, h));
  EXPECT_EQ(s.position(), 12u);
}

TEST(Baselines, RejectsBadSwitchSlot) {
  ChannelModel ch({{1.0, 1.0}});
  ChannelStream s(ch, 1);
  EXPECT_THROW(run_baseline(BaselineKind::uniform, 1, s, HarvestParams(1.0), RateParams(2.0, 1.0), 5),
               std::invalid_argument);
  EXPECT_THROW(run_baseline(BaselineKind::uniform, 6, s, HarvestParams(1.0), RateParams(2.0, 1.0), 5),
               std::invalid_argument);
}

TEST(Baselines, ScanTwoSlots) {
  auto scan = optimize_t0_baseline(BaselineKind::uniform, discretize_rayleigh(4, 1.0), HarvestParams(0.1),
                                   RateParams(3.0, 0.025), 2, 100, 1);
  EXPECT_EQ(scan.best_t0, 2);
  EXPECT_EQ(scan.mean_bits.size(), 1u);
}

TEST(Baselines, ScanDeterministicChannel) {
  ChannelModel ch({{1.0, 1.0}});
  for (int T = 2; T <= 20; ++T) {
    auto scan = optimize_t0_baseline(BaselineKind::uniform, ch, HarvestParams(0.3, 1.0, 1.0), RateParams(2.0, 1.0), T,
                                     3, 1);
    // (t0 - 1)(T - t0 + 1) peaks at t0 = T/2 + 1; odd T ties two neighbours.
    if (T % 2 == 0)
      EXPECT_EQ(scan.best_t0, T / 2 + 1) << "T=" << T;
    else
      EXPECT_TRUE(scan.best_t0 == (T + 1) / 2 || scan.best_t0 == (T + 3) / 2) << "T=" << T;
  }
}

TEST(Baselines, ScanReturnsArgmax) {
  for (auto kind : {BaselineKind::uniform, BaselineKind::power_halving}) {
    auto scan = optimize_t0_baseline(kind, discretize_rayleigh(10, 1.0), HarvestParams(0.1), RateParams(3.0, 0.025),
                                     25, 2000, 5, 2);
    ASSERT_EQ(scan.mean_bits.size(), 24u);
    const auto best = std::max_element(scan.mean_bits.begin(), scan.mean_bits.end());
    EXPECT_EQ(scan.best_t0, 2 + static_cast<int>(best - scan.mean_bits.begin()));
  }
}

TEST(Baselines, ScanIndependentOfThreads) {
  auto a = optimize_t0_baseline(BaselineKind::power_halving, discretize_rayleigh(10, 1.0), HarvestParams(0.1),
                                RateParams(3.0, 0.025), 15, 5000, 9, 1);
  auto b = optimize_t0_baseline(BaselineKind::power_halving, discretize_rayleigh(10, 1.0), HarvestParams(0.1),
                                RateParams(3.0, 0.025), 15, 5000, 9, 4);
  EXPECT_EQ(a.mean_bits, b.mean_bits);
}
