#include "wpd/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wpd {

std::vector<double> compute_Q(const ChannelModel& channel, int horizon, const RateParams& params) {
  if (horizon < 2) throw std::invalid_argument("compute_Q: horizon must be at least 2");
  if (!channel.has_positive_gain()) throw std::invalid_argument("compute_Q: channel has no positive gain");

  std::vector<double> shares;
  shares.reserve(channel.size());
  for (const auto& level : channel.levels()) shares.push_back(std::pow(level.gain, params.share_exponent()));

  std::vector<double> q(static_cast<std::size_t>(horizon));
  double next_pow = 0.0;  // Q(t+1)^(m/(m-1)), zero past the last slot
  for (int t = horizon - 1; t >= 0; --t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i)
      acc += channel.probability(i) * std::pow(shares[i] + next_pow, params.q_root());
    q[static_cast<std::size_t>(t)] = acc;
    next_pow = std::pow(acc, params.q_power());
  }
  return q;
}

double optimal_fraction(double gain, double q_value, const RateParams& params) {
  if (gain < 0.0 || q_value < 0.0) throw std::invalid_argument("optimal_fraction: negative argument");
  const double share = std::pow(gain, params.share_exponent());
  const double denom = share + std::pow(q_value, params.q_power());
  return denom > 0.0 ? share / denom : 0.0;
}

double value_function(double energy, double gain, double q_value, const RateParams& params) {
  if (energy < 0.0) throw std::invalid_argument("value_function: energy must be non-negative");
  const double inner = std::pow(gain, params.share_exponent()) + std::pow(q_value, params.q_power());
  return mth_root(energy / params.lambda(), params) * std::pow(inner, params.q_root());
}

double stopping_value(double energy, double q_prev, const RateParams& params) {
  if (energy < 0.0) throw std::invalid_argument("stopping_value: energy must be non-negative");
  return mth_root(energy / params.lambda(), params) * q_prev;
}

double threshold_lhs(double gamma, std::span<const double> harvest, std::span<const double> probs,
                     const RateParams& params) {
  double acc = 0.0;
  for (std::size_t i = 0; i < harvest.size(); ++i)
    acc += probs[i] * std::exp(std::log1p(harvest[i] / gamma) * params.inv_order());
  return acc;
}

namespace {

double solve_threshold(double ratio, double max_harvest, std::span<const double> harvest,
                       std::span<const double> probs, const RateParams& params) {
  auto excess = [&](double gamma) { return threshold_lhs(gamma, harvest, probs, params) - ratio; };

  // The LHS never exceeds (1 + max e / γ)^(1/m), so the root lies at or below
  // max e / (R^m - 1). Halve from there until the LHS is above R.
  double hi = max_harvest / std::expm1(params.order() * std::log(ratio));
  if (!std::isfinite(hi) || !(hi > 0.0))
    throw std::domain_error("compute_thresholds: cannot bracket threshold for ratio " + std::to_string(ratio));
  double lo = hi;
  for (int i = 0; i < 2100 && excess(lo) <= 0.0; ++i) lo *= 0.5;
  if (excess(lo) <= 0.0) return hi;  // degenerate: root at hi

  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(excess(lo)) < std::abs(excess(hi)) ? lo : hi;
}

}  // namespace

std::vector<double> compute_thresholds(std::span<const double> q_values, std::span<const double> harvest,
                                       std::span<const double> probs, const RateParams& params) {
  if (harvest.size() != probs.size()) throw std::invalid_argument("compute_thresholds: size mismatch");
  const double max_harvest = harvest.empty() ? 0.0 : *std::max_element(harvest.begin(), harvest.end());
  if (!(max_harvest > 0.0)) throw std::invalid_argument("compute_thresholds: no level harvests energy");

  std::vector<double> gamma;
  if (q_values.size() < 2) return gamma;
  gamma.reserve(q_values.size() - 1);
  for (std::size_t t = 1; t < q_values.size(); ++t) {
    const double ratio = q_values[t - 1] / q_values[t];
    if (!(ratio > 1.0))
      throw std::domain_error("compute_thresholds: Q(" + std::to_string(t - 1) + ")/Q(" + std::to_string(t) +
                              ") = " + std::to_string(ratio) + " is not above 1");
    const double root = solve_threshold(ratio, max_harvest, harvest, probs, params);
    const double residual = threshold_lhs(root, harvest, probs, params) - ratio;
    if (!(std::abs(residual) < kThresholdResidual))
      throw std::runtime_error("compute_thresholds: residual " + std::to_string(residual) + " at t = " +
                               std::to_string(t));
    gamma.push_back(root);
  }
  return gamma;
}

OnlineTables::OnlineTables(ChannelModel channel, int horizon, RateParams rate, HarvestParams harvest)
    : channel_(std::move(channel)), horizon_(horizon), rate_(rate), harvest_(harvest) {
  q_ = compute_Q(channel_, horizon_, rate_);
  harvest_levels_ = wpd::harvest_levels(channel_, harvest_);
  const auto probs = channel_.probabilities();
  gamma_ = compute_thresholds(q_, harvest_levels_, probs, rate_);
  q_.push_back(0.0);
  q_pow_.reserve(q_.size());
  for (double v : q_) q_pow_.push_back(std::pow(v, rate_.q_power()));
  for (const auto& level : channel_.levels()) gain_share_.push_back(std::pow(level.gain, rate_.share_exponent()));
}

double OnlineTables::fraction(int t, std::size_t level) const {
  if (t == horizon_) return 1.0;
  const double share = gain_share_.at(level);
  const double denom = share + q_pow_.at(static_cast<std::size_t>(t));
  return denom > 0.0 ? share / denom : 0.0;
}

EpisodeTrace run_online_policy(const OnlineTables& tables, ChannelStream& stream,
                               const OnlinePolicyOptions& options) {
  const int horizon = tables.horizon();
  if (options.forced_t0 != 0 && (options.forced_t0 < 2 || options.forced_t0 > horizon))
    throw std::invalid_argument("run_online_policy: forced t0 must lie in [2, T]");
  const auto& channel = tables.channel();
  const auto harvest = tables.harvest_levels();

  EpisodeTrace trace;
  if (options.record_slots) trace.slots.reserve(static_cast<std::size_t>(horizon));

  double energy = 0.0;
  int t = 1;
  for (; t <= horizon; ++t) {
    bool stop;
    if (options.forced_t0 != 0)
      stop = t == options.forced_t0;
    else
      stop = t == horizon || energy >= (tables.gamma(t) + options.threshold_offset) * (1.0 - kStopSlack);
    if (stop) break;
    const std::size_t level = stream.sample_level();
    if (options.record_slots) trace.slots.push_back({t, channel.gain(level), energy, 0.0, 0.0});
    energy += harvest[level];
    trace.total_harvested += harvest[level];
  }
  trace.t0 = t;
  trace.energy_at_t0 = energy;

  if (options.sensing_energy > 0.0) {
    if (energy + 1e-15 * options.sensing_energy < options.sensing_energy) {
      trace.feasible = false;
    } else {
      trace.sensing_energy = options.sensing_energy;
      energy = std::max(0.0, energy - options.sensing_energy);
    }
  }

  for (; t <= horizon; ++t) {
    const std::size_t level = stream.sample_level();
    const double gain = channel.gain(level);
    double spend = 0.0;
    double bits = 0.0;
    if (trace.feasible) {
      spend = t == horizon ? energy : tables.fraction(t, level) * energy;
      bits = rate(spend, gain, tables.rate());
    }
    if (options.record_slots) trace.slots.push_back({t, gain, energy, spend, bits});
    trace.total_bits += bits;
    energy = t == horizon && trace.feasible ? 0.0 : energy - spend;
  }
  return trace;
}

}  // namespace wpd
