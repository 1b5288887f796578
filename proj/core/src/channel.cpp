#include "wpd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wpd {

ChannelModel::ChannelModel(std::vector<ChannelLevel> levels) {
  if (levels.empty()) throw std::invalid_argument("channel model needs at least one level");
  double total = 0.0;
  for (const auto& level : levels) {
    if (!std::isfinite(level.gain) || level.gain < 0.0)
      throw std::invalid_argument("channel gain must be finite and non-negative, got " + std::to_string(level.gain));
    if (!std::isfinite(level.probability) || level.probability <= 0.0)
      throw std::invalid_argument("channel level probability must be positive, got " +
                                  std::to_string(level.probability));
    total += level.probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("channel probabilities sum to " + std::to_string(total) + ", expected 1");

  std::sort(levels.begin(), levels.end(),
            [](const ChannelLevel& x, const ChannelLevel& y) { return x.gain < y.gain; });
  for (const auto& level : levels) {
    if (!levels_.empty() && levels_.back().gain == level.gain)
      levels_.back().probability += level.probability;
    else
      levels_.push_back(level);
  }
  for (auto& level : levels_) level.probability /= total;

  cumulative_.reserve(levels_.size());
  double acc = 0.0;
  for (const auto& level : levels_) {
    acc += level.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

std::vector<double> ChannelModel::gains() const {
  std::vector<double> out;
  out.reserve(levels_.size());
  for (const auto& level : levels_) out.push_back(level.gain);
  return out;
}

std::vector<double> ChannelModel::probabilities() const {
  std::vector<double> out;
  out.reserve(levels_.size());
  for (const auto& level : levels_) out.push_back(level.probability);
  return out;
}

double ChannelModel::mean_gain() const {
  return expectation([](double g) { return g; });
}

std::size_t ChannelModel::level_for(double u) const noexcept {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto n = static_cast<std::size_t>(it - cumulative_.begin());
  return n < levels_.size() ? n : levels_.size() - 1;
}

ChannelModel discretize_rayleigh(std::size_t levels, double mean_gain) {
  if (levels == 0) throw std::invalid_argument("discretize_rayleigh: level count must be at least 1");
  if (!(mean_gain > 0.0) || !std::isfinite(mean_gain))
    throw std::invalid_argument("discretize_rayleigh: mean gain must be positive");

  // Bin n covers quantiles [a, b) = [n/N, (n+1)/N). For an exponential with
  // mean μ, ∫ x f(x) dx over [x_a, ∞) is (x_a + μ)(1 - a), so the conditional
  // mean of the bin is N [(x_a + μ)(1 - a) - (x_b + μ)(1 - b)].
  const double n_levels = static_cast<double>(levels);
  auto tail_moment = [&](std::size_t n) {
    if (n >= levels) return 0.0;
    const double survival = 1.0 - static_cast<double>(n) / n_levels;
    const double x = -mean_gain * std::log(survival);
    return (x + mean_gain) * survival;
  };
  std::vector<ChannelLevel> out;
  out.reserve(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    out.push_back({n_levels * (tail_moment(n) - tail_moment(n + 1)), 1.0 / n_levels});
  }
  return ChannelModel(std::move(out));
}

ChannelModel gilbert_elliot(double p_good, double g_good, double g_bad) {
  if (!(p_good > 0.0 && p_good < 1.0))
    throw std::invalid_argument("gilbert_elliot: p_good must lie in (0, 1), got " + std::to_string(p_good));
  return ChannelModel({{g_bad, 1.0 - p_good}, {g_good, p_good}});
}

ChannelStream::ChannelStream(const ChannelModel& model, std::uint64_t seed)
    : model_(&model), seed_(seed), engine_(seed) {}

std::size_t ChannelStream::sample_level() {
  ++position_;
  if (model_->size() == 1) {
    engine_();  // keep the engine in step with multi-level models
    return 0;
  }
  return model_->level_for(uniform01(engine_));
}

}  // namespace wpd
