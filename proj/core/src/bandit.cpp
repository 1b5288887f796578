#include "wpd/bandit.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

#include "wpd/parallel.hpp"

namespace wpd {

void validate_arms(std::span<const ArmSpec> arms) {
  if (arms.empty()) throw std::invalid_argument("bandit: at least one arm is required");
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const auto& a = arms[k];
    if (!(a.bits >= 0.0) || !std::isfinite(a.bits)) throw std::invalid_argument("bandit: packet size must be >= 0");
    if (!(a.utility > 0.0) || !std::isfinite(a.utility)) throw std::invalid_argument("bandit: utility must be > 0");
    if (!(a.energy_cost >= 0.0) || !std::isfinite(a.energy_cost))
      throw std::invalid_argument("bandit: sensing energy must be >= 0");
    if (k > 0 && arms[k - 1].bits > a.bits) throw std::invalid_argument("bandit: arms must be sorted by packet size");
  }
}

BanditState::BanditState(std::size_t arms, double prior_a, double prior_b)
    : posteriors_(arms, BetaPosterior{prior_a, prior_b}), pulls_(arms, 0) {
  if (arms == 0) throw std::invalid_argument("BanditState: at least one arm is required");
  if (!(prior_a > 0.0 && prior_b > 0.0)) throw std::invalid_argument("BanditState: Beta prior must be positive");
}

void BanditState::update(std::size_t k, bool success) {
  auto& post = posteriors_.at(k);
  if (success)
    post.a += 1.0;
  else
    post.b += 1.0;
  ++pulls_[k];
}

std::size_t ts_select(const BanditState& state, std::span<const ArmSpec> arms, Engine& rng) {
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const auto& post = state.posterior(k);
    const double score = arms[k].utility * sample_beta(rng, post.a, post.b);
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

std::size_t greedy_select(const BanditState& state, std::span<const ArmSpec> arms, double epsilon, Engine& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("greedy_select: epsilon must lie in [0, 1]");
  if (epsilon > 0.0 && bernoulli(rng, epsilon)) return uniform_index(rng, state.size());
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double score = arms[k].utility * state.posterior(k).mean();
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

SensingEnvironment::SensingEnvironment(OnlineTables tables, std::vector<ArmSpec> arms)
    : tables_(std::move(tables)), arms_(std::move(arms)) {
  validate_arms(arms_);
}

EpisodeTrace SensingEnvironment::play_arm_trace(std::size_t k, ChannelStream& stream) const {
  const auto& arm = arms_.at(k);
  return run_online_policy(tables_, stream,
                           {.threshold_offset = arm.energy_cost, .sensing_energy = arm.energy_cost});
}

bool SensingEnvironment::play_arm(std::size_t k, ChannelStream& stream) const {
  const auto& arm = arms_.at(k);
  const auto trace = run_online_policy(
      tables_, stream,
      {.threshold_offset = arm.energy_cost, .sensing_energy = arm.energy_cost, .record_slots = false});
  return trace.feasible && trace.total_bits > arm.bits;
}

ArmOracle estimate_arm_oracle(const SensingEnvironment& env, std::size_t plays_per_arm, std::uint64_t seed,
                              unsigned threads) {
  if (plays_per_arm == 0) throw std::invalid_argument("estimate_arm_oracle: plays must be at least 1");
  const std::size_t arms = env.arms().size();
  ArmOracle out;
  out.theta.resize(arms);
  out.plays.assign(arms, plays_per_arm);
  out.utility.resize(arms);
  std::vector<char> hits(plays_per_arm);
  for (std::size_t k = 0; k < arms; ++k) {
    parallel_blocks(plays_per_arm, 1024, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        ChannelStream stream(env.tables().channel(), derive_seed(seed, i));
        hits[i] = env.play_arm(k, stream) ? 1 : 0;
      }
    });
    std::size_t successes = 0;
    for (char h : hits) successes += static_cast<std::size_t>(h);
    out.theta[k] = static_cast<double>(successes) / static_cast<double>(plays_per_arm);
    out.utility[k] = env.arms()[k].utility * out.theta[k];
    if (k == 0 || out.utility[k] > out.best_utility) {
      out.best_utility = out.utility[k];
      out.best_arm = k;
    }
  }
  return out;
}

std::string BanditAlgorithm::label() const {
  if (kind == Kind::thompson) return "ts";
  char buf[64];
  std::snprintf(buf, sizeof buf, "eps_greedy(%g)", epsilon);
  return buf;
}

namespace {

constexpr std::uint64_t kChannelSalt = 0xC4A77E1ULL;
constexpr std::uint64_t kSelectSalt = 0x5E1EC7ULL;
constexpr std::size_t kReplicationBlock = 16;

}  // namespace

RegretSeries run_regret_experiment(const BanditAlgorithm& algorithm, const SensingEnvironment& env,
                                   const ArmOracle& oracle, std::size_t steps, std::size_t replications,
                                   std::uint64_t seed, unsigned threads) {
  if (replications == 0) throw std::invalid_argument("run_regret_experiment: replications must be at least 1");
  const auto arms = env.arms();
  const std::size_t k_arms = arms.size();
  if (oracle.theta.size() != k_arms) throw std::invalid_argument("run_regret_experiment: oracle/arm mismatch");
  if (algorithm.kind == BanditAlgorithm::Kind::epsilon_greedy &&
      !(algorithm.epsilon >= 0.0 && algorithm.epsilon <= 1.0))
    throw std::invalid_argument("run_regret_experiment: epsilon must lie in [0, 1]");

  // Per-step regret takes only K distinct values, so selection counts per
  // (step, arm) carry all the information. Integer counts merge exactly,
  // whatever the thread count.
  std::vector<std::uint64_t> counts(steps * k_arms, 0);
  std::mutex counts_mu;
  std::vector<double> rewards(replications, 0.0);

  parallel_blocks(replications, kReplicationBlock, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> local(steps * k_arms, 0);
    for (std::size_t r = begin; r < end; ++r) {
      ChannelStream stream(env.tables().channel(), derive_seed(derive_seed(seed, kChannelSalt), r));
      Engine rng(derive_seed(derive_seed(seed, kSelectSalt), r));
      BanditState state(k_arms);
      for (std::size_t step = 0; step < steps; ++step) {
        const std::size_t k = algorithm.kind == BanditAlgorithm::Kind::thompson
                                  ? ts_select(state, arms, rng)
                                  : greedy_select(state, arms, algorithm.epsilon, rng);
        const bool chi = env.play_arm(k, stream);
        state.update(k, chi);
        if (chi) state.add_reward(arms[k].utility);
        ++local[step * k_arms + k];
      }
      rewards[r] = state.cumulative_reward();
    }
    std::lock_guard lock(counts_mu);
    for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
  });

  std::vector<double> gap(k_arms);
  for (std::size_t k = 0; k < k_arms; ++k) gap[k] = oracle.best_utility - oracle.utility[k];

  RegretSeries out;
  out.algorithm = algorithm.label();
  out.replications = replications;
  out.mean_regret.resize(steps);
  out.std_error.resize(steps);
  out.best_arm_share.resize(steps);
  const double n = static_cast<double>(replications);
  for (std::size_t step = 0; step < steps; ++step) {
    const auto* row = &counts[step * k_arms];
    double mean = 0.0;
    for (std::size_t k = 0; k < k_arms; ++k) mean += static_cast<double>(row[k]) * gap[k];
    mean /= n;
    double ss = 0.0;
    for (std::size_t k = 0; k < k_arms; ++k) ss += static_cast<double>(row[k]) * (gap[k] - mean) * (gap[k] - mean);
    out.mean_regret[step] = mean;
    out.std_error[step] = replications > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    out.best_arm_share[step] = static_cast<double>(row[oracle.best_arm]) / n;
  }
  out.mean_cumulative_reward = 0.0;
  for (double r : rewards) out.mean_cumulative_reward += r;
  out.mean_cumulative_reward /= n;
  return out;
}

}  // namespace wpd
