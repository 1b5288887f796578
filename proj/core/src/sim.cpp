#include "wpd/sim.hpp"

#include <stdexcept>
#include <vector>

#include "wpd/offline.hpp"
#include "wpd/online.hpp"
#include "wpd/parallel.hpp"

namespace wpd {

namespace {

// Baseline switch-slot scans draw from a seed family disjoint from the
// evaluation trials.
constexpr std::uint64_t kScanSalt = 0x5CA11AB1E5EEDULL;
constexpr std::size_t kBlock = 512;

struct TrialResult {
  double bits = 0.0;
  double t0 = 0.0;
  double harvest = 0.0;
};

struct TrialColumns {
  std::vector<double> bits, t0, harvest;
  explicit TrialColumns(std::size_t n) : bits(n), t0(n), harvest(n) {}
  void set(std::size_t i, const TrialResult& r) {
    bits[i] = r.bits;
    t0[i] = r.t0;
    harvest[i] = r.harvest;
  }
  MonteCarloSummary summary() const {
    const auto s = sample_stats(bits);
    MonteCarloSummary out;
    out.mean = s.mean;
    out.std_error = s.std_error;
    out.trials = bits.size();
    out.mean_t0 = sample_stats(t0).mean;
    out.mean_harvest = sample_stats(harvest).mean;
    return out;
  }
};

std::vector<double> sample_frame(const ChannelModel& channel, std::uint64_t seed, int horizon) {
  ChannelStream stream(channel, seed);
  std::vector<double> gains(static_cast<std::size_t>(horizon));
  for (auto& g : gains) g = stream.sample();
  return gains;
}

TrialResult offline_trial(const ChannelModel& channel, const FrameConfig& frame, std::uint64_t seed) {
  const auto gains = sample_frame(channel, seed, frame.horizon);
  const auto sol = optimize_t0_offline(gains, frame.harvest, frame.rate);
  return {sol.throughput, static_cast<double>(sol.t0), sol.energy};
}

TrialResult from_trace(const EpisodeTrace& trace) {
  return {trace.total_bits, static_cast<double>(trace.t0), trace.energy_at_t0};
}

void check_trials(const SimOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("simulation: trials must be at least 1");
}

int scan_baseline(BaselineKind kind, const ChannelModel& channel, const FrameConfig& frame,
                  const SimOptions& options) {
  const std::size_t scan_trials = options.baseline_scan_trials == 0 ? options.trials : options.baseline_scan_trials;
  return optimize_t0_baseline(kind, channel, frame.harvest, frame.rate, frame.horizon, scan_trials,
                              derive_seed(options.seed, kScanSalt), options.threads)
      .best_t0;
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::offline: return "offline";
    case PolicyKind::online: return "online";
    case PolicyKind::uniform: return "uniform";
    case PolicyKind::power_halving: return "power_halving";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) noexcept {
  if (name == "offline") return PolicyKind::offline;
  if (name == "online") return PolicyKind::online;
  if (name == "uniform") return PolicyKind::uniform;
  if (name == "power_halving" || name == "power-halving") return PolicyKind::power_halving;
  return std::nullopt;
}

MonteCarloSummary estimate_throughput(PolicyKind policy, const ChannelModel& channel, const FrameConfig& frame,
                                      const SimOptions& options) {
  check_trials(options);
  TrialColumns cols(options.trials);
  switch (policy) {
    case PolicyKind::offline: {
      if (frame.horizon < 2) throw std::invalid_argument("simulation: horizon must be at least 2");
      parallel_blocks(options.trials, kBlock, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) cols.set(i, offline_trial(channel, frame, derive_seed(options.seed, i)));
      });
      break;
    }
    case PolicyKind::online: {
      const OnlineTables tables(channel, frame.horizon, frame.rate, frame.harvest);
      parallel_blocks(options.trials, kBlock, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          ChannelStream stream(tables.channel(), derive_seed(options.seed, i));
          cols.set(i, from_trace(run_online_policy(tables, stream, {.record_slots = false})));
        }
      });
      break;
    }
    case PolicyKind::uniform:
    case PolicyKind::power_halving: {
      const auto kind = policy == PolicyKind::uniform ? BaselineKind::uniform : BaselineKind::power_halving;
      const int t0 = scan_baseline(kind, channel, frame, options);
      parallel_blocks(options.trials, kBlock, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          ChannelStream stream(channel, derive_seed(options.seed, i));
          cols.set(i, from_trace(run_baseline(kind, t0, stream, frame.harvest, frame.rate, frame.horizon, false)));
        }
      });
      break;
    }
  }
  return cols.summary();
}

PolicyComparison compare_policies(const ChannelModel& channel, const FrameConfig& frame, const SimOptions& options) {
  check_trials(options);
  PolicyComparison out;
  out.uniform_t0 = scan_baseline(BaselineKind::uniform, channel, frame, options);
  out.power_halving_t0 = scan_baseline(BaselineKind::power_halving, channel, frame, options);
  const OnlineTables tables(channel, frame.horizon, frame.rate, frame.harvest);

  const std::size_t n = options.trials;
  TrialColumns off(n), on(n), uni(n), half(n);
  std::vector<char> violation(n, 0);
  parallel_blocks(n, kBlock, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t seed = derive_seed(options.seed, i);
      const auto gains = sample_frame(channel, seed, frame.horizon);
      const auto sol = optimize_t0_offline(gains, frame.harvest, frame.rate);
      off.set(i, {sol.throughput, static_cast<double>(sol.t0), sol.energy});

      ChannelStream s_on(tables.channel(), seed);
      const auto trace = run_online_policy(tables, s_on, {.record_slots = false});
      on.set(i, from_trace(trace));
      const auto window = std::span<const double>(gains).subspan(static_cast<std::size_t>(trace.t0 - 1));
      const double same_t0 = allocate_offline(trace.energy_at_t0, window, frame.rate).throughput;
      violation[i] = same_t0 < trace.total_bits * (1.0 - 1e-12) ? 1 : 0;

      ChannelStream s_uni(channel, seed);
      uni.set(i, from_trace(run_baseline(BaselineKind::uniform, out.uniform_t0, s_uni, frame.harvest, frame.rate,
                                         frame.horizon, false)));
      ChannelStream s_half(channel, seed);
      half.set(i, from_trace(run_baseline(BaselineKind::power_halving, out.power_halving_t0, s_half, frame.harvest,
                                          frame.rate, frame.horizon, false)));
    }
  });

  out.offline = off.summary();
  out.online = on.summary();
  out.uniform = uni.summary();
  out.power_halving = half.summary();
  std::vector<double> diff(n);
  auto paired = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    return sample_stats(diff);
  };
  out.offline_minus_online = paired(off.bits, on.bits);
  out.online_minus_uniform = paired(on.bits, uni.bits);
  out.online_minus_power_halving = paired(on.bits, half.bits);
  for (char v : violation) out.offline_dominance_violations += static_cast<std::size_t>(v);
  return out;
}

std::vector<CurvePoint> rate_energy_curve(const ChannelModel& channel, const FrameConfig& frame,
                                          const std::vector<int>& t0_grid, const SimOptions& options) {
  check_trials(options);
  for (int t0 : t0_grid)
    if (t0 < 2 || t0 > frame.horizon) throw std::invalid_argument("rate_energy_curve: t0 outside [2, T]");
  const OnlineTables tables(channel, frame.horizon, frame.rate, frame.harvest);

  std::vector<CurvePoint> curve;
  curve.reserve(t0_grid.size());
  TrialColumns cols(options.trials);
  for (int t0 : t0_grid) {
    parallel_blocks(options.trials, kBlock, options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        ChannelStream stream(tables.channel(), derive_seed(options.seed, i));
        cols.set(i, from_trace(run_online_policy(tables, stream, {.forced_t0 = t0, .record_slots = false})));
      }
    });
    const auto bits = sample_stats(cols.bits);
    curve.push_back({t0, sample_stats(cols.harvest).mean, bits.mean, bits.std_error});
  }
  return curve;
}

}  // namespace wpd
