#include "wpd/oracle.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "wpd/online.hpp"

namespace wpd::oracle {

BruteForceResult brute_force_offline(std::span<const double> gains, double energy, const RateParams& params,
                                     const GridSpec& grid) {
  const std::size_t slots = gains.size();
  if (slots == 0 || slots > 6) throw std::invalid_argument("brute_force_offline: window must have 1..6 slots");
  if (grid.fraction_points < 2) throw std::invalid_argument("brute_force_offline: need at least 2 grid points");
  if (!(energy >= 0.0)) throw std::invalid_argument("brute_force_offline: energy must be non-negative");

  const std::size_t units = grid.fraction_points - 1;
  const double step = energy / static_cast<double>(units);
  BruteForceResult out;
  out.powers.assign(slots, 0.0);
  if (slots == 1) {
    out.powers[0] = energy;
    out.throughput = rate(energy, gains[0], params);
    return out;
  }

  // best[r]: max bits from slots s..end with r units left, last slot takes all.
  auto stage_rates = [&](std::size_t s) {
    std::vector<double> r(units + 1);
    for (std::size_t u = 0; u <= units; ++u) r[u] = rate(static_cast<double>(u) * step, gains[s], params);
    return r;
  };
  std::vector<double> best = stage_rates(slots - 1);
  std::vector<std::vector<std::size_t>> choice(slots);
  for (std::size_t s = slots - 1; s-- > 1;) {
    const auto here = stage_rates(s);
    std::vector<double> next(units + 1);
    choice[s].assign(units + 1, 0);
    for (std::size_t r = 0; r <= units; ++r) {
      double top = -1.0;
      for (std::size_t u = 0; u <= r; ++u) {
        const double v = here[u] + best[r - u];
        if (v > top) {
          top = v;
          choice[s][r] = u;
        }
      }
      next[r] = top;
    }
    best = std::move(next);
  }
  const auto first = stage_rates(0);
  double top = -1.0;
  std::size_t first_units = 0;
  for (std::size_t u = 0; u <= units; ++u) {
    const double v = first[u] + best[units - u];
    if (v > top) {
      top = v;
      first_units = u;
    }
  }

  std::size_t left = units - first_units;
  out.powers[0] = static_cast<double>(first_units) * step;
  for (std::size_t s = 1; s + 1 < slots; ++s) {
    const std::size_t u = choice[s][left];
    out.powers[s] = static_cast<double>(u) * step;
    left -= u;
  }
  out.powers[slots - 1] = static_cast<double>(left) * step;
  out.throughput = 0.0;
  for (std::size_t s = 0; s < slots; ++s) out.throughput += rate(out.powers[s], gains[s], params);
  return out;
}

double DpTable::value(int slot, std::size_t j, std::size_t level) const {
  return value_.at((static_cast<std::size_t>(slot) * energy_points_ + j) * levels_ + level);
}

double DpTable::fraction(int slot, std::size_t j, std::size_t level) const {
  return fraction_.at((static_cast<std::size_t>(slot) * energy_points_ + j) * levels_ + level);
}

double DpTable::expected_value() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < levels_; ++i) acc += probs_[i] * value(0, energy_points_ - 1, i);
  return acc;
}

DpTable dp_value_iteration(const ChannelModel& channel, int slots, double max_energy, const RateParams& params,
                           const GridSpec& grid) {
  if (slots < 1 || slots > 8) throw std::invalid_argument("dp_value_iteration: slots must lie in [1, 8]");
  if (channel.size() > 3) throw std::invalid_argument("dp_value_iteration: at most 3 channel levels");
  if (grid.energy_points < 2 || grid.energy_points > 1001)
    throw std::invalid_argument("dp_value_iteration: energy points must lie in [2, 1001]");
  if (!(max_energy > 0.0)) throw std::invalid_argument("dp_value_iteration: max energy must be positive");

  DpTable table;
  table.slots_ = slots;
  table.energy_points_ = grid.energy_points;
  table.levels_ = channel.size();
  table.step_ = max_energy / static_cast<double>(grid.energy_points - 1);
  table.probs_ = channel.probabilities();
  const std::size_t n = grid.energy_points;
  const std::size_t levels = channel.size();
  table.value_.assign(static_cast<std::size_t>(slots) * n * levels, 0.0);
  table.fraction_.assign(table.value_.size(), 0.0);
  auto idx = [&](int s, std::size_t j, std::size_t i) { return (static_cast<std::size_t>(s) * n + j) * levels + i; };

  // rates[i][u]: bits from spending u lattice steps at level i.
  std::vector<std::vector<double>> rates(levels, std::vector<double>(n));
  for (std::size_t i = 0; i < levels; ++i)
    for (std::size_t u = 0; u < n; ++u) rates[i][u] = rate(table.energy_at(u), channel.gain(i), params);

  const int last = slots - 1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < levels; ++i) {
      table.value_[idx(last, j, i)] = rates[i][j];
      table.fraction_[idx(last, j, i)] = 1.0;
    }

  std::vector<double> future(n);
  for (int s = last - 1; s >= 0; --s) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < levels; ++i) acc += table.probs_[i] * table.value_[idx(s + 1, j, i)];
      future[j] = acc;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double e = table.energy_at(j);
      for (std::size_t i = 0; i < levels; ++i) {
        const double g = channel.gain(i);
        // Objective over kept energy x in [0, e]: r(e - x) + future(x), with
        // future linear between lattice points. It is concave, so the best
        // lattice point brackets the continuous maximum.
        double top = -1.0;
        std::size_t k = j;
        for (std::size_t keep = 0; keep <= j; ++keep) {
          const double v = rates[i][j - keep] + future[keep];
          if (v > top) {
            top = v;
            k = keep;
          }
        }
        double best_keep = table.energy_at(k);
        if (g > 0.0) {
          const double c = std::pow(g / params.lambda(), params.inv_order());
          const double m = params.order();
          for (std::size_t a : {k - 1, k}) {
            if (k == 0 && a == k - 1) continue;
            if (a + 1 > j) continue;
            const double slope = (future[a + 1] - future[a]) / table.step_;
            if (!(slope > 0.0)) continue;
            // r'(p) = (c/m) p^(1/m - 1) = slope
            const double p = std::pow(slope * m / c, m / (1.0 - m));
            const double x = std::clamp(e - p, table.energy_at(a), table.energy_at(a + 1));
            const double t = (x - table.energy_at(a)) / table.step_;
            const double v = rate(std::max(e - x, 0.0), g, params) + future[a] + t * (future[a + 1] - future[a]);
            if (v > top) {
              top = v;
              best_keep = x;
            }
          }
        }
        table.value_[idx(s, j, i)] = top;
        table.fraction_[idx(s, j, i)] = j == 0 ? 0.0 : (e - best_keep) / e;
      }
    }
  }
  return table;
}

namespace {

double fraction_policy_value(const ChannelModel& channel, int slot, int slots, double energy,
                             const RateParams& params, const FractionPolicy& policy) {
  double acc = 0.0;
  for (std::size_t i = 0; i < channel.size(); ++i) {
    const double g = channel.gain(i);
    const int remaining = slots - slot;
    const double alpha = remaining == 1 ? 1.0 : policy(slot, remaining, energy, g);
    const double spend = alpha * energy;
    double v = rate(spend, g, params);
    if (remaining > 1) v += fraction_policy_value(channel, slot + 1, slots, energy - spend, params, policy);
    acc += channel.probability(i) * v;
  }
  return acc;
}

void check_stopping_size(const ChannelModel& channel, int horizon) {
  if (channel.size() > 2) throw std::invalid_argument("stopping oracle: at most 2 channel levels");
  const int max_horizon = channel.size() == 1 ? 64 : 17;  // at most 2^16 channel paths
  if (horizon < 2 || horizon > max_horizon)
    throw std::invalid_argument("stopping oracle: horizon out of range for the channel size");
}

struct StoppingTree {
  const ChannelModel& channel;
  int horizon;
  const RateParams& rate;
  std::vector<double> harvest;
  std::vector<double> q;
  std::vector<StoppingDecision>* decisions = nullptr;

  double stop_value(int t, double energy) const {
    return stopping_value(energy, q[static_cast<std::size_t>(t - 1)], rate);
  }

  double optimal(int t, double energy) const {
    const double stop = stop_value(t, energy);
    if (t == horizon) {
      if (decisions) decisions->push_back({t, energy, true, stop, stop});
      return stop;
    }
    double cont = 0.0;
    for (std::size_t i = 0; i < channel.size(); ++i) cont += channel.probability(i) * optimal(t + 1, energy + harvest[i]);
    if (decisions) decisions->push_back({t, energy, stop >= cont, stop, cont});
    return std::max(stop, cont);
  }

  double follow(int t, double energy, const std::function<bool(int, double)>& rule) const {
    if (t == horizon || rule(t, energy)) return stop_value(t, energy);
    double cont = 0.0;
    for (std::size_t i = 0; i < channel.size(); ++i)
      cont += channel.probability(i) * follow(t + 1, energy + harvest[i], rule);
    return cont;
  }
};

}  // namespace

double evaluate_fraction_policy(const ChannelModel& channel, int slots, double energy, const RateParams& params,
                                const FractionPolicy& policy) {
  if (slots < 1 || slots > 8) throw std::invalid_argument("evaluate_fraction_policy: slots must lie in [1, 8]");
  return fraction_policy_value(channel, 0, slots, energy, params, policy);
}

StoppingResult exhaustive_stopping(const ChannelModel& channel, int horizon, const RateParams& rate,
                                   const HarvestParams& harvest) {
  check_stopping_size(channel, horizon);
  StoppingResult out;
  StoppingTree tree{channel, horizon, rate, harvest_levels(channel, harvest), compute_Q(channel, horizon, rate),
                    &out.decisions};
  out.optimum = tree.optimal(1, 0.0);
  return out;
}

double evaluate_stopping_rule(const ChannelModel& channel, int horizon, const RateParams& rate,
                              const HarvestParams& harvest, const std::function<bool(int, double)>& stop) {
  check_stopping_size(channel, horizon);
  StoppingTree tree{channel, horizon, rate, harvest_levels(channel, harvest), compute_Q(channel, horizon, rate)};
  return tree.follow(1, 0.0, stop);
}

}  // namespace wpd::oracle
