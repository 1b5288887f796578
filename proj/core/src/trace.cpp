#include "wpd/trace.hpp"

#include <algorithm>
#include <cmath>

namespace wpd {

bool check_energy_conservation(const EpisodeTrace& trace, const HarvestParams& harvest_params,
                               double tolerance) {
  const auto& slots = trace.slots;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& s = slots[i];
    if (s.energy_before < -tolerance || s.action < 0.0) return false;
    if (s.slot < trace.t0 && s.action != 0.0) return false;
    if (s.action > s.energy_before + tolerance) return false;
    if (i + 1 == slots.size()) break;

    double expected;
    if (s.slot < trace.t0) {
      expected = s.energy_before + harvest(s.gain, harvest_params);
      if (s.slot + 1 == trace.t0) expected -= trace.sensing_energy;
    } else {
      expected = s.energy_before - s.action;
    }
    const double scale = std::max(1.0, std::abs(expected));
    if (std::abs(slots[i + 1].energy_before - expected) > tolerance * scale) return false;
  }
  return true;
}

}  // namespace wpd
