#pragma once

#include <span>
#include <vector>

#include "wpd/rate_energy.hpp"

namespace wpd {

/// Backward accumulator G over a transmission window, G(t) =
/// [g(t)^(1/(m-1)) + G(t+1)^(1/(m-1))]^(m-1) with G = 0 past the horizon.
/// The result has gains.size() + 1 entries; the last one is that zero.
std::vector<double> compute_G(std::span<const double> gains, const RateParams& params);

struct OfflineAllocation {
  std::vector<double> powers;   // joules spent in each window slot
  std::vector<double> g_table;  // G over the window plus the trailing zero
  double energy = 0.0;          // energy available at the start of the window
  double throughput = 0.0;      // Σ rate(p(t), g(t)), bits
};

/// Optimal non-causal split of `energy` over a window of known gains. Each slot
/// spends the share g^(1/(m-1)) / (g^(1/(m-1)) + G(t+1)^(1/(m-1))) of what is
/// left and the final slot spends the remainder. Throws on negative energy or
/// an empty window.
OfflineAllocation allocate_offline(double energy, std::span<const double> gains,
                                   const RateParams& params);

/// (E G / λ)^(1/m), the total throughput of the optimal split.
double offline_bits(double energy, double g_value, const RateParams& params);

struct OfflineSolution {
  int t0 = 0;                       // first transmission slot, 1-based
  double energy = 0.0;              // E(t0)
  std::vector<double> powers;       // p*(t) for t = t0..T
  std::vector<double> g_table;      // G(t) for t = t0..T+1
  double throughput = 0.0;          // bits
  std::vector<double> objective;    // closed-form bits for each t0 = 2..T
};

/// Scans every switch slot 2 <= t0 <= T over a full realized frame g(1..T),
/// the device starting empty. Ties go to the smaller t0. Throws if T < 2.
OfflineSolution optimize_t0_offline(std::span<const double> gains, const HarvestParams& harvest,
                                    const RateParams& params);

}  // namespace wpd
