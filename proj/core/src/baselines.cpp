#include "wpd/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "wpd/parallel.hpp"
#include "wpd/stats.hpp"

namespace wpd {

std::string_view to_string(BaselineKind kind) noexcept {
  return kind == BaselineKind::uniform ? "uniform" : "power_halving";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) noexcept {
  if (name == "uniform") return BaselineKind::uniform;
  if (name == "power_halving" || name == "power-halving") return BaselineKind::power_halving;
  return std::nullopt;
}

EpisodeTrace run_baseline(BaselineKind kind, int t0, ChannelStream& stream, const HarvestParams& harvest_params,
                          const RateParams& rate_params, int horizon, bool record_slots) {
  if (horizon < 2 || t0 < 2 || t0 > horizon) throw std::invalid_argument("run_baseline: t0 must lie in [2, T]");
  EpisodeTrace trace;
  trace.t0 = t0;
  if (record_slots) trace.slots.reserve(static_cast<std::size_t>(horizon));

  double energy = 0.0;
  for (int t = 1; t < t0; ++t) {
    const double gain = stream.sample();
    if (record_slots) trace.slots.push_back({t, gain, energy, 0.0, 0.0});
    const double h = harvest(gain, harvest_params);
    energy += h;
    trace.total_harvested += h;
  }
  trace.energy_at_t0 = energy;

  const double uniform_share = energy / static_cast<double>(horizon - t0 + 1);
  for (int t = t0; t <= horizon; ++t) {
    const double gain = stream.sample();
    double spend;
    if (t == horizon)
      spend = energy;
    else if (kind == BaselineKind::uniform)
      spend = std::min(uniform_share, energy);
    else
      spend = 0.5 * energy;
    const double bits = rate(spend, gain, rate_params);
    if (record_slots) trace.slots.push_back({t, gain, energy, spend, bits});
    trace.total_bits += bits;
    energy = t == horizon ? 0.0 : energy - spend;
  }
  return trace;
}

BaselineScan optimize_t0_baseline(BaselineKind kind, const ChannelModel& channel, const HarvestParams& harvest_params,
                                  const RateParams& rate_params, int horizon, std::size_t trials, std::uint64_t seed,
                                  unsigned threads) {
  if (horizon < 2) throw std::invalid_argument("optimize_t0_baseline: horizon must be at least 2");
  if (trials == 0) throw std::invalid_argument("optimize_t0_baseline: trials must be at least 1");
  const std::size_t candidates = static_cast<std::size_t>(horizon - 1);

  BaselineScan scan;
  scan.mean_bits.resize(candidates);
  std::vector<double> bits(trials);
  for (std::size_t c = 0; c < candidates; ++c) {
    const int t0 = static_cast<int>(c) + 2;
    parallel_blocks(trials, 1024, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        ChannelStream stream(channel, derive_seed(seed, i));
        bits[i] = run_baseline(kind, t0, stream, harvest_params, rate_params, horizon, false).total_bits;
      }
    });
    scan.mean_bits[c] = pairwise_sum(bits) / static_cast<double>(trials);
  }
  double best = scan.mean_bits[0];
  for (std::size_t c = 1; c < candidates; ++c) {
    if (scan.mean_bits[c] > best) {
      best = scan.mean_bits[c];
      scan.best_t0 = static_cast<int>(c) + 2;
    }
  }
  return scan;
}

}  // namespace wpd
