#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"

// Brute-force reference solvers. Nothing here calls the closed-form
// allocation formulas; they exist to check them.
namespace wpd::oracle {

struct GridSpec {
  std::size_t energy_points = 200;     // energy lattice for the online DP, incl. 0 and E_max
  std::size_t fraction_points = 1001;  // allocation lattice for the offline search, incl. 0 and 1
};

struct BruteForceResult {
  std::vector<double> powers;
  double throughput = 0.0;
};

/// Best split of `energy` over at most six known gains when every slot spends
/// a multiple of energy / (fraction_points - 1). The search is exhaustive over
/// that lattice; it is organized as a stage-wise maximization so the cost is
/// polynomial in the lattice size.
BruteForceResult brute_force_offline(std::span<const double> gains, double energy, const RateParams& params,
                                     const GridSpec& grid);

/// Tabulated finite-horizon DP for the transmission phase. Values live on an
/// evenly spaced energy lattice over [0, max_energy]; the spend is continuous
/// and the continuation value is interpolated linearly between lattice points.
/// The value is concave in energy, so interpolation only underestimates it.
class DpTable {
 public:
  int slots() const noexcept { return slots_; }
  std::size_t energy_points() const noexcept { return energy_points_; }
  double energy_at(std::size_t j) const noexcept { return static_cast<double>(j) * step_; }
  /// V(slot, energy index, channel level); slot 0 is the first transmission slot.
  double value(int slot, std::size_t j, std::size_t level) const;
  /// Greedy fraction of the battery spent in that cell.
  double fraction(int slot, std::size_t j, std::size_t level) const;
  /// Channel-averaged value at the top of the lattice in the first slot.
  double expected_value() const;

 private:
  friend DpTable dp_value_iteration(const ChannelModel&, int, double, const RateParams&, const GridSpec&);
  int slots_ = 0;
  std::size_t energy_points_ = 0;
  std::size_t levels_ = 0;
  double step_ = 0.0;
  std::vector<double> probs_;
  std::vector<double> value_;
  std::vector<double> fraction_;
};

/// Throws std::invalid_argument unless slots <= 8, levels <= 3 and energy
/// points are in [2, 1001].
DpTable dp_value_iteration(const ChannelModel& channel, int slots, double max_energy, const RateParams& params,
                           const GridSpec& grid);

/// Fraction rule: (slot index from 0, remaining slots, energy, gain) -> α.
using FractionPolicy = std::function<double(int slot, int remaining, double energy, double gain)>;

/// Exact expected throughput of a fraction rule over `slots` transmission
/// slots, enumerating all N^slots channel paths. The final slot always
/// spends everything.
double evaluate_fraction_policy(const ChannelModel& channel, int slots, double energy, const RateParams& params,
                                const FractionPolicy& policy);

struct StoppingDecision {
  int slot;
  double energy;
  bool stop;
  double stop_value;
  double continue_value;  // equal to stop_value at slot T
};

struct StoppingResult {
  double optimum = 0.0;                    // expected bits of the best stopping rule
  std::vector<StoppingDecision> decisions; // every reachable (slot, energy) node
};

/// Exact optimal stopping of the harvesting phase by backward induction over
/// the full tree of reachable energies (sums of harvest amounts, no lattice).
/// Stopping at slot t with energy E is worth (E/λ)^(1/m) Q(t-1). Requires
/// at most two channel levels and at most 2^16 channel paths (T <= 17 for two
/// levels, T <= 64 for one).
StoppingResult exhaustive_stopping(const ChannelModel& channel, int horizon, const RateParams& rate,
                                   const HarvestParams& harvest);

/// Exact expected bits of an arbitrary stopping rule on the same tree. The
/// rule is consulted for t < T; the frame always stops at T.
double evaluate_stopping_rule(const ChannelModel& channel, int horizon, const RateParams& rate,
                              const HarvestParams& harvest, const std::function<bool(int, double)>& stop);

}  // namespace wpd::oracle
