#include <benchmark/benchmark.h>

#include <vector>

#include "wpd/bandit.hpp"
#include "wpd/channel.hpp"
#include "wpd/offline.hpp"
#include "wpd/online.hpp"

namespace {

const wpd::RateParams kRate(3.0, 0.025);
const wpd::HarvestParams kHarvest(0.1, 1.0, 1e-3);

void BM_OnlineTables(benchmark::State& state) {
  const auto channel = wpd::discretize_rayleigh(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) {
    wpd::OnlineTables tables(channel, static_cast<int>(state.range(1)), kRate, kHarvest);
    benchmark::DoNotOptimize(tables.gamma(1));
  }
}
BENCHMARK(BM_OnlineTables)->Args({20, 15})->Args({20, 100})->Args({100, 100});

void BM_OnlineEpisode(benchmark::State& state) {
  const wpd::OnlineTables tables(wpd::discretize_rayleigh(20, 1.0), static_cast<int>(state.range(0)), kRate, kHarvest);
  wpd::OnlinePolicyOptions options;
  options.record_slots = false;
  std::uint64_t i = 0;
  for (auto _ : state) {
    wpd::ChannelStream stream(tables.channel(), i++);
    benchmark::DoNotOptimize(wpd::run_online_policy(tables, stream, options).total_bits);
  }
}
BENCHMARK(BM_OnlineEpisode)->Arg(15)->Arg(100);

void BM_OfflineEpisode(benchmark::State& state) {
  const auto channel = wpd::discretize_rayleigh(20, 1.0);
  const int horizon = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    wpd::ChannelStream stream(channel, i++);
    std::vector<double> gains(static_cast<std::size_t>(horizon));
    for (auto& g : gains) g = stream.sample();
    benchmark::DoNotOptimize(wpd::optimize_t0_offline(gains, kHarvest, kRate).throughput);
  }
}
BENCHMARK(BM_OfflineEpisode)->Arg(15)->Arg(100);

void BM_BanditStep(benchmark::State& state) {
  const wpd::SensingEnvironment env(
      wpd::OnlineTables(wpd::discretize_rayleigh(30, 1.0), 15, wpd::RateParams(3.0, 1e-14),
                        wpd::HarvestParams(0.1, 0.02, 1e-3)),
      {{1000, 500, 1e-6}, {2500, 700, 3e-6}, {3000, 750, 4e-6}});
  wpd::BanditState bandit(env.arms().size());
  wpd::ChannelStream stream(env.tables().channel(), 1);
  wpd::Engine rng(2);
  for (auto _ : state) {
    const auto k = wpd::ts_select(bandit, env.arms(), rng);
    bandit.update(k, env.play_arm(k, stream));
  }
}
BENCHMARK(BM_BanditStep);

}  // namespace

BENCHMARK_MAIN();
