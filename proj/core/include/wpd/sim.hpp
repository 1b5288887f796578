#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wpd/baselines.hpp"
#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"
#include "wpd/stats.hpp"

namespace wpd {

enum class PolicyKind { offline, online, uniform, power_halving };

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy(std::string_view name) noexcept;

struct FrameConfig {
  int horizon;
  RateParams rate;
  HarvestParams harvest;
};

struct SimOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t baseline_scan_trials = 10000;  // realizations per t0 candidate
};

struct MonteCarloSummary {
  double mean = 0.0;       // bits per frame
  double std_error = 0.0;  // bits
  std::size_t trials = 0;
  double mean_t0 = 0.0;
  double mean_harvest = 0.0;  // E(t0), J
};

/// Mean frame throughput of one policy. Trial i always uses the channel
/// stream seeded with derive_seed(seed, i), so different policies run on the
/// same realizations. The offline policy sees the whole realized frame.
/// Baselines first pick their switch slot by optimize_t0_baseline on an
/// independent seed set.
MonteCarloSummary estimate_throughput(PolicyKind policy, const ChannelModel& channel, const FrameConfig& frame,
                                      const SimOptions& options);

/// All four policies on common random numbers, plus the paired statistics
/// needed to compare them.
struct PolicyComparison {
  MonteCarloSummary offline, online, uniform, power_halving;
  int uniform_t0 = 0;
  int power_halving_t0 = 0;
  SampleStats offline_minus_online;
  SampleStats online_minus_uniform;
  SampleStats online_minus_power_halving;
  /// Trials where the offline split, run from the online t0 on the same
  /// realization, delivered fewer bits than the online policy (should be 0).
  std::size_t offline_dominance_violations = 0;
};

PolicyComparison compare_policies(const ChannelModel& channel, const FrameConfig& frame, const SimOptions& options);

struct CurvePoint {
  int t0 = 0;
  double mean_energy = 0.0;  // E[E(t0)], J
  double mean_bits = 0.0;
  double std_error = 0.0;
};

/// Rate-energy trade-off: for each forced t0 the online allocation runs from
/// t0 and the mean energy at t0 is paired with the mean throughput.
std::vector<CurvePoint> rate_energy_curve(const ChannelModel& channel, const FrameConfig& frame,
                                          const std::vector<int>& t0_grid, const SimOptions& options);

}  // namespace wpd
