#include "wpd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "wpd/offline.hpp"
#include "wpd/online.hpp"
#include "wpd/oracle.hpp"

namespace wpd {

namespace {

double uniform(Engine& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::string describe(double a, double b) {
  std::ostringstream ss;
  ss.precision(12);
  ss << a << " vs " << b;
  return ss.str();
}

}  // namespace

Instance random_instance(Engine& rng, std::size_t max_levels, int min_horizon, int max_horizon) {
  const std::size_t n = 1 + uniform_index(rng, max_levels);
  std::vector<ChannelLevel> levels;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = uniform(rng, 0.05, 2.0);
    if (i == 0 && n > 1 && uniform01(rng) < 0.25) g = 0.0;
    const double w = uniform(rng, 0.1, 1.0);
    levels.push_back({g, w});
    total += w;
  }
  for (auto& l : levels) l.probability /= total;
  const double m = uniform01(rng) < 0.5 ? 2.0 : 3.0;
  const RateParams rate(m, uniform(rng, 0.01, 1.0));
  const HarvestParams harvest(uniform(rng, 0.1, 2.0), uniform(rng, 0.3, 1.0), 1.0);
  const int span = max_horizon - min_horizon + 1;
  const int horizon = min_horizon + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(span)));
  return Instance{ChannelModel(std::move(levels)), rate, harvest, horizon};
}

OfflineCheck check_offline_vs_grid(std::span<const double> gains, double energy, const RateParams& rate,
                                   std::size_t fraction_points) {
  OfflineCheck out;
  const auto alloc = allocate_offline(energy, gains, rate);
  out.closed_bits = alloc.throughput;
  out.identity_bits = offline_bits(energy, alloc.g_table.front(), rate);
  out.grid_bits = oracle::brute_force_offline(gains, energy, rate, {.fraction_points = fraction_points}).throughput;
  out.relative_gap = out.closed_bits > 0.0 ? std::abs(out.closed_bits - out.grid_bits) / out.closed_bits : 0.0;
  out.identity_error =
      out.identity_bits > 0.0 ? std::abs(out.closed_bits - out.identity_bits) / out.identity_bits : out.closed_bits;
  return out;
}

DpCheck check_online_vs_dp(const ChannelModel& channel, int slots, double energy, const RateParams& rate,
                           std::span<const std::size_t> energy_grids) {
  DpCheck out;
  // The k-slot transmission phase is a k-slot horizon for the Q recursion.
  const auto q = compute_Q(channel, std::max(slots, 2), rate);
  out.closed_value = oracle::evaluate_fraction_policy(
      channel, slots, energy, rate, [&](int slot, int, double, double gain) {
        return optimal_fraction(gain, q[static_cast<std::size_t>(slot + 1)], rate);
      });
  for (std::size_t points : energy_grids) {
    const auto table = oracle::dp_value_iteration(channel, slots, energy, rate, {.energy_points = points});
    const double dp = table.expected_value();
    out.dp_values.push_back(dp);
    out.gaps.push_back(out.closed_value > 0.0 ? (out.closed_value - dp) / out.closed_value : 0.0);
  }
  return out;
}

StoppingCheck check_stopping(const Instance& inst) {
  StoppingCheck out;
  const auto result = oracle::exhaustive_stopping(inst.channel, inst.horizon, inst.rate, inst.harvest);
  out.optimum = result.optimum;
  const OnlineTables tables(inst.channel, inst.horizon, inst.rate, inst.harvest);
  out.threshold_value = oracle::evaluate_stopping_rule(
      inst.channel, inst.horizon, inst.rate, inst.harvest,
      [&](int t, double energy) { return energy >= tables.gamma(t) * (1.0 - kStopSlack); });

  std::map<int, std::pair<double, double>> bounds;  // slot -> (max continue E, min stop E)
  for (const auto& d : result.decisions) {
    if (d.slot == inst.horizon) continue;
    auto [it, inserted] = bounds.try_emplace(d.slot, -std::numeric_limits<double>::infinity(),
                                             std::numeric_limits<double>::infinity());
    if (d.stop)
      it->second.second = std::min(it->second.second, d.energy);
    else
      it->second.first = std::max(it->second.first, d.energy);
  }
  for (const auto& [slot, b] : bounds)
    if (!(b.first < b.second)) out.up_sets = false;
  return out;
}

StructureCheck check_structure(const Instance& inst) {
  StructureCheck out;
  const OnlineTables tables(inst.channel, inst.horizon, inst.rate, inst.harvest);
  const auto q = tables.q_values();
  for (std::size_t t = 0; t + 1 < q.size(); ++t)
    if (!(q[t] > q[t + 1])) out.q_decreasing = false;
  for (std::size_t t = 1; t + 1 < q.size(); ++t)
    if (!(q[t - 1] / q[t] < q[t] / q[t + 1])) out.ratios_increasing = false;
  const auto gamma = tables.thresholds();
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
    if (!(gamma[i] > gamma[i + 1])) out.gamma_decreasing = false;
  const auto probs = inst.channel.probabilities();
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double ratio = q[i] / q[i + 1];
    const double residual = std::abs(threshold_lhs(gamma[i], tables.harvest_levels(), probs, inst.rate) - ratio);
    out.max_residual = std::max(out.max_residual, residual);
  }
  return out;
}

double value_identity_error(const ChannelModel& channel, int horizon, int t, double energy, const RateParams& rate) {
  const auto q = compute_Q(channel, horizon, rate);
  const double averaged = channel.expectation(
      [&](double g) { return value_function(energy, g, q[static_cast<std::size_t>(t)], rate); });
  const double closed = stopping_value(energy, q[static_cast<std::size_t>(t - 1)], rate);
  return closed > 0.0 ? std::abs(averaged - closed) / closed : std::abs(averaged);
}

std::vector<Violation> run_validation_suite(std::uint64_t seed, std::size_t instances) {
  std::vector<Violation> out;
  Engine rng(seed);

  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = random_instance(rng, 3, 1, 5);
    ChannelStream stream(inst.channel, derive_seed(seed, i));
    std::vector<double> gains(static_cast<std::size_t>(inst.horizon));
    for (auto& g : gains) g = stream.sample();
    const double energy = uniform(rng, 0.1, 5.0);
    const auto c = check_offline_vs_grid(gains, energy, inst.rate, 1001);
    if (c.relative_gap > 1e-2 || c.grid_bits > c.closed_bits * (1.0 + 1e-9))
      out.push_back({"offline_vs_grid", i, describe(c.closed_bits, c.grid_bits)});
    if (c.identity_error > 1e-9) out.push_back({"offline_identity", i, describe(c.closed_bits, c.identity_bits)});
  }

  // 100, 200 and 500 lattice intervals; the coarsest lattice is contained in
  // both finer ones.
  const std::size_t grids[] = {101, 201, 501};
  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = random_instance(rng, 3, 2, 6);
    const auto c = check_online_vs_dp(inst.channel, inst.horizon, uniform(rng, 0.1, 5.0), inst.rate, grids);
    if (c.gaps.back() > 1e-2 || c.gaps.back() < -1e-9)
      out.push_back({"online_vs_dp", i, describe(c.closed_value, c.dp_values.back())});
    for (std::size_t g = 1; g < c.gaps.size(); ++g)
      if (c.gaps[g] > c.gaps[g - 1] + 1e-12)
        out.push_back({"online_dp_refinement", i, describe(c.gaps[g - 1], c.gaps[g])});
  }

  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = random_instance(rng, 2, 2, 6);
    const auto c = check_stopping(inst);
    if (std::abs(c.optimum - c.threshold_value) > 1e-9 * std::max(1.0, c.optimum))
      out.push_back({"stopping_optimality", i, describe(c.optimum, c.threshold_value)});
    if (!c.up_sets) out.push_back({"stopping_up_set", i, "stop set is not an upper set in energy"});
  }

  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = random_instance(rng, 10, 2, 50);
    const auto c = check_structure(inst);
    if (!c.q_decreasing) out.push_back({"q_decreasing", i, "Q(t) not strictly decreasing"});
    if (!c.ratios_increasing) out.push_back({"q_ratio_increasing", i, "Q(t-1)/Q(t) not strictly increasing"});
    if (!c.gamma_decreasing) out.push_back({"gamma_decreasing", i, "gamma(t) not strictly decreasing"});
    if (!(c.max_residual < kThresholdResidual))
      out.push_back({"threshold_residual", i, describe(c.max_residual, kThresholdResidual)});

    const int t = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(inst.horizon - 1)));
    const double err = value_identity_error(inst.channel, inst.horizon, t, uniform(rng, 1e-3, 10.0), inst.rate);
    if (err > 1e-12) out.push_back({"value_identity", i, describe(err, 1e-12)});
  }
  return out;
}

}  // namespace wpd
