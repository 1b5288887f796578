#include "wpd/offline.hpp"

#include <cmath>
#include <stdexcept>

namespace wpd {

namespace {

// G(t)^(1/(m-1)) is the suffix sum of g^(1/(m-1)); working with the sums
// unrolls the G recursion without a root/power round trip per slot.
std::vector<double> share_suffix_sums(std::span<const double> gains, const RateParams& params) {
  std::vector<double> sums(gains.size() + 1, 0.0);
  for (std::size_t i = gains.size(); i-- > 0;) {
    if (gains[i] < 0.0) throw std::invalid_argument("offline: gains must be non-negative");
    sums[i] = sums[i + 1] + std::pow(gains[i], params.share_exponent());
  }
  return sums;
}

std::vector<double> to_g_table(const std::vector<double>& sums, const RateParams& params) {
  std::vector<double> g(sums.size());
  const double exponent = params.order() - 1.0;
  for (std::size_t i = 0; i < sums.size(); ++i) g[i] = std::pow(sums[i], exponent);
  return g;
}

OfflineAllocation allocate_from_sums(double energy, std::span<const double> gains,
                                     const std::vector<double>& sums, const RateParams& params) {
  OfflineAllocation out;
  out.energy = energy;
  out.powers.resize(gains.size());
  double remaining = energy;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const bool last = i + 1 == gains.size();
    double p;
    if (last) {
      p = remaining;
    } else {
      // sums[i] = 0 means no gain left in the window; hold the energy.
      const double share = sums[i] > 0.0 ? std::pow(gains[i], params.share_exponent()) / sums[i] : 0.0;
      p = share * remaining;
    }
    out.powers[i] = p;
    out.throughput += rate(p, gains[i], params);
    remaining = last ? 0.0 : remaining - p;
  }
  return out;
}

}  // namespace

std::vector<double> compute_G(std::span<const double> gains, const RateParams& params) {
  return to_g_table(share_suffix_sums(gains, params), params);
}

double offline_bits(double energy, double g_value, const RateParams& params) {
  return mth_root(energy * g_value / params.lambda(), params);
}

OfflineAllocation allocate_offline(double energy, std::span<const double> gains, const RateParams& params) {
  if (gains.empty()) throw std::invalid_argument("allocate_offline: empty window");
  if (!(energy >= 0.0)) throw std::invalid_argument("allocate_offline: energy must be non-negative");
  const auto sums = share_suffix_sums(gains, params);
  auto out = allocate_from_sums(energy, gains, sums, params);
  out.g_table = to_g_table(sums, params);
  return out;
}

OfflineSolution optimize_t0_offline(std::span<const double> gains, const HarvestParams& harvest_params,
                                    const RateParams& params) {
  const std::size_t horizon = gains.size();
  if (horizon < 2) throw std::invalid_argument("optimize_t0_offline: horizon must be at least 2");

  const auto sums = share_suffix_sums(gains, params);
  const auto g_table = to_g_table(sums, params);

  OfflineSolution best;
  best.objective.reserve(horizon - 1);
  double energy = 0.0;  // E(t0) for the current candidate, E(1) = 0
  double best_value = -1.0;
  double best_energy = 0.0;
  std::size_t best_index = 1;
  for (std::size_t index = 1; index < horizon; ++index) {  // t0 = index + 1
    energy += harvest(gains[index - 1], harvest_params);
    const double value = offline_bits(energy, g_table[index], params);
    best.objective.push_back(value);
    // Relative slack so rounding cannot break an exact tie toward the later slot.
    if (value > best_value * (1.0 + 1e-12) || best_value < 0.0) {
      best_value = value;
      best_energy = energy;
      best_index = index;
    }
  }

  const auto window = gains.subspan(best_index);
  const std::vector<double> window_sums(sums.begin() + static_cast<std::ptrdiff_t>(best_index), sums.end());
  auto alloc = allocate_from_sums(best_energy, window, window_sums, params);
  best.t0 = static_cast<int>(best_index) + 1;
  best.energy = best_energy;
  best.powers = std::move(alloc.powers);
  best.throughput = alloc.throughput;
  best.g_table.assign(g_table.begin() + static_cast<std::ptrdiff_t>(best_index), g_table.end());
  return best;
}

}  // namespace wpd
