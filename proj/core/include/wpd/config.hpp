#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wpd/bandit.hpp"
#include "wpd/channel.hpp"
#include "wpd/rate_energy.hpp"
#include "wpd/sim.hpp"

namespace wpd {

/// Configuration problem tied to one field. `field()` is a dotted path such as
/// "channel.levels" or "arms[2].L_bits".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ChannelConfig {
  enum class Type { rayleigh, gilbert_elliot };
  Type type = Type::rayleigh;
  std::size_t levels = 20;  // rayleigh
  double mean = 1.0;        // rayleigh
  double p_good = 0.6;      // gilbert-elliot
  double g_good = 1.0;
  double g_bad = 0.0;
};

ChannelModel build_channel(const ChannelConfig& config);

/// Parses a channel object: {"type":"rayleigh","levels":N,"mean":1.0} or
/// {"type":"gilbert-elliot","p_good":0.6,"g_good":1.0,"g_bad":0.0}.
ChannelConfig parse_channel_config(std::string_view json_text);

inline constexpr std::string_view kExperiments[] = {
    "rate-energy", "throughput-vs-N", "throughput-vs-T", "rate-vs-T", "bandit-regret", "tables", "validate"};

struct ExperimentConfig {
  std::string experiment;
  ChannelConfig channel;
  int horizon = 15;  // key "T"
  double m = 3.0;
  double lambda = 0.025;
  double beacon_power_dbm = 20.0;
  double eta = 1.0;
  double slot_ms = 1.0;
  double bandwidth_hz = 2000.0;        // recorded only; folded into lambda
  double noise_dbm_per_hz = -176.0;    // recorded only; folded into lambda
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t baseline_scan_trials = 10000;
  std::vector<int> t0_grid;            // empty means 2..T
  std::vector<std::size_t> n_sweep;    // key "N_sweep"
  std::vector<int> t_sweep;            // key "T_sweep"
  std::vector<std::string> policies = {"offline", "online", "uniform", "power_halving"};
  std::vector<ArmSpec> arms;           // energy stored in joules
  std::size_t bandit_steps = 10000;
  std::size_t replications = 1000;
  std::vector<double> epsilons = {0.0, 0.05, 0.1};
  bool include_ts = true;
  std::size_t oracle_plays = 100000;
  std::size_t validate_instances = 20;

  RateParams rate_params() const { return RateParams(m, lambda); }
  HarvestParams harvest_params() const;
  FrameConfig frame(int horizon_override = 0) const;
};

/// Parses and eagerly validates a JSON configuration. Unknown keys are
/// rejected so typos surface as errors. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace wpd
