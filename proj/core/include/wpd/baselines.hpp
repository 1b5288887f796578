#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"
#include "wpd/trace.hpp"

namespace wpd {

enum class BaselineKind { uniform, power_halving };

std::string_view to_string(BaselineKind kind) noexcept;
std::optional<BaselineKind> parse_baseline(std::string_view name) noexcept;

/// Harvests over slots 1..t0-1, then spends the battery open loop:
///   uniform        p(t) = E(t0) / (T - t0 + 1)
///   power_halving  p(t) = E(t) / 2, and p(T) = E(T)
/// Draws exactly T gains. Throws std::invalid_argument unless 2 <= t0 <= T.
EpisodeTrace run_baseline(BaselineKind kind, int t0, ChannelStream& stream, const HarvestParams& harvest,
                          const RateParams& rate, int horizon, bool record_slots = true);

struct BaselineScan {
  int best_t0 = 2;
  std::vector<double> mean_bits;  // index t0 - 2
};

/// Exhaustive search of the switch slot in expectation. Every candidate is
/// evaluated on the same `trials` channel realizations.
BaselineScan optimize_t0_baseline(BaselineKind kind, const ChannelModel& channel, const HarvestParams& harvest,
                                  const RateParams& rate, int horizon, std::size_t trials, std::uint64_t seed,
                                  unsigned threads = 1);

}  // namespace wpd
