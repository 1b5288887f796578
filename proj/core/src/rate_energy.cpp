#include "wpd/rate_energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wpd/channel.hpp"

namespace wpd {

RateParams::RateParams(double order, double lambda) : order_(order), lambda_(lambda) {
  if (!std::isfinite(order) || !(order > 1.0))
    throw std::invalid_argument("monomial order m must be > 1, got " + std::to_string(order));
  if (!std::isfinite(lambda) || !(lambda > 0.0))
    throw std::invalid_argument("energy coefficient lambda must be > 0, got " + std::to_string(lambda));
  inv_order_ = 1.0 / order;
  share_exp_ = 1.0 / (order - 1.0);
  q_power_ = order / (order - 1.0);
  q_root_ = (order - 1.0) / order;
}

HarvestParams::HarvestParams(double beacon_power_w, double efficiency, double slot_seconds)
    : beacon_power_(beacon_power_w), efficiency_(efficiency), slot_seconds_(slot_seconds) {
  if (!std::isfinite(beacon_power_w) || !(beacon_power_w > 0.0))
    throw std::invalid_argument("beacon power must be > 0 W, got " + std::to_string(beacon_power_w));
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    throw std::invalid_argument("harvesting efficiency must lie in (0, 1], got " + std::to_string(efficiency));
  if (!std::isfinite(slot_seconds) || !(slot_seconds > 0.0))
    throw std::invalid_argument("slot duration must be > 0 s, got " + std::to_string(slot_seconds));
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double mth_root(double x, const RateParams& params) {
  if (x == 0.0) return 0.0;
  return params.order() == 3.0 ? std::cbrt(x) : std::pow(x, params.inv_order());
}

double rate(double energy, double gain, const RateParams& params) {
  if (energy < 0.0 || gain < 0.0) throw std::invalid_argument("rate: energy and gain must be non-negative");
  return mth_root(energy * gain / params.lambda(), params);
}

double harvest(double gain, const HarvestParams& params) { return gain * params.unit_energy(); }

std::vector<double> harvest_levels(const ChannelModel& channel, const HarvestParams& params) {
  std::vector<double> out;
  out.reserve(channel.size());
  for (const auto& level : channel.levels()) out.push_back(harvest(level.gain, params));
  return out;
}

}  // namespace wpd
