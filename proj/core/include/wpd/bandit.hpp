#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpd/channel.hpp"
#include "wpd/online.hpp"
#include "wpd/random.hpp"

namespace wpd {

/// One sensing resolution: a packet of `bits`, worth `utility` when it is
/// delivered within the frame, that costs `energy_cost` joules to produce.
struct ArmSpec {
  double bits;
  double utility;
  double energy_cost;
};

/// Checks arm invariants (bits >= 0, utility > 0, cost >= 0, sorted by bits).
void validate_arms(std::span<const ArmSpec> arms);

struct BetaPosterior {
  double a = 1.0;
  double b = 1.0;
  double mean() const noexcept { return a / (a + b); }
};

class BanditState {
 public:
  explicit BanditState(std::size_t arms, double prior_a = 1.0, double prior_b = 1.0);

  std::size_t size() const noexcept { return posteriors_.size(); }
  const BetaPosterior& posterior(std::size_t k) const { return posteriors_.at(k); }
  std::size_t pulls(std::size_t k) const { return pulls_.at(k); }
  double cumulative_reward() const noexcept { return cumulative_reward_; }

  /// Conjugate update of the pulled arm: (a, b) <- (a + χ, b + 1 - χ).
  void update(std::size_t k, bool success);
  /// Adds Z_k χ_k to the running reward.
  void add_reward(double reward) noexcept { cumulative_reward_ += reward; }

 private:
  std::vector<BetaPosterior> posteriors_;
  std::vector<std::size_t> pulls_;
  double cumulative_reward_ = 0.0;
};

/// Thompson sampling: draw θ_k ~ Beta(a_k, b_k) and return argmax Z_k θ_k,
/// ties to the lower index.
std::size_t ts_select(const BanditState& state, std::span<const ArmSpec> arms, Engine& rng);

/// ε-greedy on the posterior means a_k / (a_k + b_k).
std::size_t greedy_select(const BanditState& state, std::span<const ArmSpec> arms, double epsilon, Engine& rng);

/// Frame-level environment: each arm runs the online policy with every
/// threshold raised by the arm's sensing cost, pays that cost at t0, and
/// succeeds when the frame delivers strictly more than the packet size.
class SensingEnvironment {
 public:
  SensingEnvironment(OnlineTables tables, std::vector<ArmSpec> arms);

  std::span<const ArmSpec> arms() const noexcept { return arms_; }
  const OnlineTables& tables() const noexcept { return tables_; }

  bool play_arm(std::size_t k, ChannelStream& stream) const;
  EpisodeTrace play_arm_trace(std::size_t k, ChannelStream& stream) const;

 private:
  OnlineTables tables_;
  std::vector<ArmSpec> arms_;
};

struct ArmOracle {
  std::vector<double> theta;          // success probability estimates
  std::vector<std::size_t> plays;     // frames simulated per arm
  std::vector<double> utility;        // Z_k θ_k
  std::size_t best_arm = 0;
  double best_utility = 0.0;
};

/// Per-arm Monte Carlo estimate of θ_k, used only as the regret reference.
/// Arm k's frame i uses seed derive_seed(seed, i) for every k, so the success
/// events of different arms are coupled on the same realizations.
ArmOracle estimate_arm_oracle(const SensingEnvironment& env, std::size_t plays_per_arm, std::uint64_t seed,
                              unsigned threads = 1);

struct BanditAlgorithm {
  enum class Kind { thompson, epsilon_greedy };
  Kind kind = Kind::thompson;
  double epsilon = 0.0;

  static BanditAlgorithm thompson() { return {Kind::thompson, 0.0}; }
  static BanditAlgorithm greedy(double eps) { return {Kind::epsilon_greedy, eps}; }
  /// "ts" or "eps_greedy(0.05)".
  std::string label() const;
};

struct RegretSeries {
  std::string algorithm;
  std::size_t replications = 0;
  std::vector<double> mean_regret;     // per step, index 0 is step 1
  std::vector<double> std_error;
  std::vector<double> best_arm_share;  // fraction of replications on the best arm
  double mean_cumulative_reward = 0.0; // Σ Z χ per replication, averaged
};

/// Per-period regret max_k Z_k θ_k - Z_{x_t} θ_{x_t}, with θ from `oracle`,
/// averaged over independent replications. Each replication owns one channel
/// stream (frames are consecutive T-slot blocks) and one selection engine.
RegretSeries run_regret_experiment(const BanditAlgorithm& algorithm, const SensingEnvironment& env,
                                   const ArmOracle& oracle, std::size_t steps, std::size_t replications,
                                   std::uint64_t seed, unsigned threads = 1);

}  // namespace wpd
