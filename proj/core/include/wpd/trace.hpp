#pragma once

#include <vector>

#include "wpd/rate_energy.hpp"

namespace wpd {

struct SlotRecord {
  int slot = 0;               // 1-based
  double gain = 0.0;
  double energy_before = 0.0; // battery at the start of the slot, J
  double action = 0.0;        // transmit energy p(t), J; zero while harvesting
  double bits = 0.0;
};

/// One simulated frame. `slots` may be empty when a caller asks for totals only.
struct EpisodeTrace {
  int t0 = 0;
  double energy_at_t0 = 0.0;     // battery when harvesting stops, before sensing cost
  double total_bits = 0.0;
  double total_harvested = 0.0;
  double sensing_energy = 0.0;   // deducted at t0 (sensing arms only)
  bool feasible = true;          // false if the sensing cost could not be paid
  std::vector<SlotRecord> slots;
};

/// Checks the battery dynamics of a recorded trace: E grows by the harvest
/// before t0, drops by the sensing cost at t0, drops by p(t) afterwards, never
/// goes negative, and p(t) <= E(t). Returns false on the first violation.
bool check_energy_conservation(const EpisodeTrace& trace, const HarvestParams& harvest,
                               double tolerance = 1e-12);

}  // namespace wpd
