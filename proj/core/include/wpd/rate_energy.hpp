#pragma once

#include <vector>

namespace wpd {

class ChannelModel;

/// Monomial rate model r = (p g / λ)^(1/m). Exponents used by the allocation
/// formulas are precomputed because they sit on every hot path.
class RateParams {
 public:
  /// Throws std::invalid_argument unless m > 1 and λ > 0 (both finite).
  RateParams(double order, double lambda);

  double order() const noexcept { return order_; }
  double lambda() const noexcept { return lambda_; }
  double inv_order() const noexcept { return inv_order_; }          // 1/m
  double share_exponent() const noexcept { return share_exp_; }     // 1/(m-1)
  double q_power() const noexcept { return q_power_; }              // m/(m-1)
  double q_root() const noexcept { return q_root_; }                // (m-1)/m

 private:
  double order_;
  double lambda_;
  double inv_order_;
  double share_exp_;
  double q_power_;
  double q_root_;
};

/// Wireless power transfer parameters. Energies are per slot: a slot of
/// `slot_seconds` at beacon power P harvests η g P slot_seconds joules.
class HarvestParams {
 public:
  /// Throws std::invalid_argument unless P > 0, 0 < η <= 1 and slot > 0.
  HarvestParams(double beacon_power_w, double efficiency = 1.0, double slot_seconds = 1e-3);

  double beacon_power() const noexcept { return beacon_power_; }
  double efficiency() const noexcept { return efficiency_; }
  double slot_seconds() const noexcept { return slot_seconds_; }
  /// η P slot, the energy harvested at unit gain.
  double unit_energy() const noexcept { return efficiency_ * beacon_power_ * slot_seconds_; }

 private:
  double beacon_power_;
  double efficiency_;
  double slot_seconds_;
};

double dbm_to_watts(double dbm);

/// x^(1/m) for x >= 0, using cbrt when m = 3.
double mth_root(double x, const RateParams& params);

/// Bits delivered in one slot when spending `energy` joules at gain `g`.
/// Throws std::invalid_argument on negative arguments.
double rate(double energy, double gain, const RateParams& params);

/// Joules harvested in one slot at gain `g`.
double harvest(double gain, const HarvestParams& params);

/// Per-level harvest amounts e_n = η g_n P slot, in level order.
std::vector<double> harvest_levels(const ChannelModel& channel, const HarvestParams& params);

}  // namespace wpd
