#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"
#include "wpd/trace.hpp"

namespace wpd {

// Indexing: slots are 1..T. Q(t) is the channel-averaged future factor seen
// from slot t, i.e. the expected value of slots t+1..T per unit (E/λ)^(1/m).
// The base case is Q(T-1) = Σ q_i g_i^(1/m), which is the general recursion
// applied to Q(T) = 0. The allocation at slot t uses Q(t); stopping at slot t
// is worth (E/λ)^(1/m) Q(t-1).

/// Q(0), ..., Q(T-1). Throws std::invalid_argument if T < 2 or the channel has
/// no positive gain.
std::vector<double> compute_Q(const ChannelModel& channel, int horizon, const RateParams& params);

/// α* = g^(1/(m-1)) / (g^(1/(m-1)) + Q^(m/(m-1))). Returns 0 when both terms
/// vanish. Not used at the final slot, where α = 1.
double optimal_fraction(double gain, double q_value, const RateParams& params);

/// V(E, g) = (E/λ)^(1/m) (g^(1/(m-1)) + Q(t)^(m/(m-1)))^((m-1)/m).
double value_function(double energy, double gain, double q_value, const RateParams& params);

/// (E/λ)^(1/m) Q(t-1): expected bits when harvesting stops with energy E.
double stopping_value(double energy, double q_prev, const RateParams& params);

/// Left-hand side of the threshold equation, Σ q_i (1 + e_i/γ)^(1/m).
double threshold_lhs(double gamma, std::span<const double> harvest, std::span<const double> probs,
                     const RateParams& params);

/// Stopping thresholds γ(1), ..., γ(T-1); element t-1 holds γ(t). Each is the
/// unique root of Σ q_i (1 + e_i/γ)^(1/m) = Q(t-1)/Q(t), bracketed and then
/// bisected to full double precision. Throws std::invalid_argument if no e_i
/// is positive and std::domain_error if a ratio is not above one.
std::vector<double> compute_thresholds(std::span<const double> q_values, std::span<const double> harvest,
                                       std::span<const double> probs, const RateParams& params);

/// Residual bound every threshold must satisfy.
inline constexpr double kThresholdResidual = 1e-10;

/// Precomputed Q and γ for one frame configuration. Immutable and cheap to
/// share across trials.
class OnlineTables {
 public:
  OnlineTables(ChannelModel channel, int horizon, RateParams rate, HarvestParams harvest);

  int horizon() const noexcept { return horizon_; }
  /// Q(t) for 0 <= t <= T, with Q(T) = 0.
  double q(int t) const { return q_.at(static_cast<std::size_t>(t)); }
  /// γ(t) for 1 <= t <= T-1.
  double gamma(int t) const { return gamma_.at(static_cast<std::size_t>(t - 1)); }
  std::span<const double> q_values() const noexcept { return {q_.data(), q_.size() - 1}; }
  std::span<const double> thresholds() const noexcept { return gamma_; }

  const ChannelModel& channel() const noexcept { return channel_; }
  const RateParams& rate() const noexcept { return rate_; }
  const HarvestParams& harvest() const noexcept { return harvest_; }
  std::span<const double> harvest_levels() const noexcept { return harvest_levels_; }

  /// α*(t) at channel level n; exactly 1 at t = T.
  double fraction(int t, std::size_t level) const;

 private:
  ChannelModel channel_;
  int horizon_;
  RateParams rate_;
  HarvestParams harvest_;
  std::vector<double> q_;               // T + 1 entries, Q(T) = 0
  std::vector<double> q_pow_;           // Q(t)^(m/(m-1))
  std::vector<double> gamma_;
  std::vector<double> harvest_levels_;
  std::vector<double> gain_share_;      // g_n^(1/(m-1))
};

struct OnlinePolicyOptions {
  double threshold_offset = 0.0;  // added to every γ(t)
  double sensing_energy = 0.0;    // deducted from the battery at t0
  int forced_t0 = 0;              // if nonzero, stop exactly here instead of using γ
  bool record_slots = true;
};

/// Relative slack on E(t) >= γ(t). At equality stopping and continuing have the
/// same value; the slack makes the rule stop there despite bisection rounding.
inline constexpr double kStopSlack = 1e-12;

/// One frame of the causal policy: harvest until E(t) >= γ(t) (always stopping
/// at T), then spend α*(t) E(t) each slot with α(T) = 1. Draws exactly T gains
/// from `stream`, one per slot, so policies can share random numbers.
EpisodeTrace run_online_policy(const OnlineTables& tables, ChannelStream& stream,
                               const OnlinePolicyOptions& options = {});

}  // namespace wpd
