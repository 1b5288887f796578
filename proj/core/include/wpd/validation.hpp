#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/random.hpp"
#include "wpd/rate_energy.hpp"

// Randomized cross-checks of the closed forms against the brute-force
// oracles. The acceptance suite and the `validate` experiment share them.
namespace wpd {

struct Instance {
  ChannelModel channel;
  RateParams rate;
  HarvestParams harvest;
  int horizon;
};

/// Random channel with 1..max_levels levels (at least one positive gain,
/// sometimes a zero-gain level), m drawn from {2, 3}, random λ and harvest
/// scale, and a horizon in [min_horizon, max_horizon].
Instance random_instance(Engine& rng, std::size_t max_levels, int min_horizon, int max_horizon);

struct OfflineCheck {
  double closed_bits = 0.0;    // allocate_offline
  double grid_bits = 0.0;      // brute_force_offline
  double identity_bits = 0.0;  // (E G / λ)^(1/m)
  double relative_gap = 0.0;   // |closed - grid| / closed
  double identity_error = 0.0; // |closed - identity| / identity
};

OfflineCheck check_offline_vs_grid(std::span<const double> gains, double energy, const RateParams& rate,
                                   std::size_t fraction_points);

struct DpCheck {
  double closed_value = 0.0;        // exact expectation of the α* policy
  std::vector<double> dp_values;    // one per grid size
  std::vector<double> gaps;         // (closed - dp) / closed, one per grid size
};

/// Compares the closed-form fraction policy over `slots` transmission slots,
/// started with `energy`, against the tabulated DP at each energy grid size.
/// Grid sizes count lattice points, including 0 and `energy`.
DpCheck check_online_vs_dp(const ChannelModel& channel, int slots, double energy, const RateParams& rate,
                           std::span<const std::size_t> energy_grids);

struct StoppingCheck {
  double optimum = 0.0;          // exhaustive stopping
  double threshold_value = 0.0;  // γ rule evaluated on the same tree
  bool up_sets = true;           // stop sets are {E >= cutoff} at every slot
};

StoppingCheck check_stopping(const Instance& instance);

struct StructureCheck {
  bool q_decreasing = true;
  bool ratios_increasing = true;
  bool gamma_decreasing = true;
  double max_residual = 0.0;
};

StructureCheck check_structure(const Instance& instance);

/// Relative gap between Σ q_i V(E, g_i) at slot t and (E/λ)^(1/m) Q(t-1),
/// for 1 <= t <= T-1.
double value_identity_error(const ChannelModel& channel, int horizon, int t, double energy, const RateParams& rate);

struct Violation {
  std::string check;
  std::size_t instance;
  std::string detail;
};

/// Runs every check above on `instances` random instances each. An empty
/// result means all passed.
std::vector<Violation> run_validation_suite(std::uint64_t seed, std::size_t instances);

}  // namespace wpd
