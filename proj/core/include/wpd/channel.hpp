#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wpd/random.hpp"

namespace wpd {

struct ChannelLevel {
  double gain;         // channel power gain, dimensionless
  double probability;  // stationary probability of this level
};

/// Finite-state iid channel. Levels are sorted by strictly increasing gain;
/// duplicate gains are merged on construction and probabilities are
/// renormalized to sum to one.
class ChannelModel {
 public:
  /// Throws std::invalid_argument if `levels` is empty, any gain is negative
  /// or non-finite, any probability is not strictly positive, or the
  /// probabilities do not sum to one within 1e-9.
  explicit ChannelModel(std::vector<ChannelLevel> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  std::span<const ChannelLevel> levels() const noexcept { return levels_; }
  double gain(std::size_t n) const { return levels_.at(n).gain; }
  double probability(std::size_t n) const { return levels_.at(n).probability; }
  std::vector<double> gains() const;
  std::vector<double> probabilities() const;

  double mean_gain() const;
  bool has_positive_gain() const noexcept { return levels_.back().gain > 0.0; }

  /// Σ q_n f(g_n).
  template <class F>
  double expectation(F&& f) const {
    double acc = 0.0;
    for (const auto& level : levels_) acc += level.probability * f(level.gain);
    return acc;
  }

  /// Inverse CDF: the level whose cumulative interval contains u ∈ [0, 1).
  std::size_t level_for(double u) const noexcept;

 private:
  std::vector<ChannelLevel> levels_;
  std::vector<double> cumulative_;
};

/// N equiprobable levels of an exponential power-gain distribution (Rayleigh
/// amplitude fading) with the given mean. Each level carries the conditional
/// mean of its quantile bin, so the discretized mean equals `mean_gain`.
ChannelModel discretize_rayleigh(std::size_t levels, double mean_gain);

/// Two-state good/bad channel.
ChannelModel gilbert_elliot(double p_good, double g_good = 1.0, double g_bad = 0.0);

/// Seeded iid gain sequence over a model. The model must outlive the stream.
class ChannelStream {
 public:
  ChannelStream(const ChannelModel& model, std::uint64_t seed);

  /// Draws the next level index and advances the position.
  std::size_t sample_level();
  /// Draws the next gain and advances the position.
  double sample() { return model_->gain(sample_level()); }

  const ChannelModel& model() const noexcept { return *model_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t position() const noexcept { return position_; }

 private:
  const ChannelModel* model_;
  std::uint64_t seed_;
  Engine engine_;
  std::size_t position_ = 0;
};

}  // namespace wpd
