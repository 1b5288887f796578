#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace wpd {

/// Engine used everywhere in the simulator. mt19937_64 output is fixed by
/// the C++ standard, so streams are bit-reproducible across platforms.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Trials, replications and
/// scan candidates all derive their seeds this way so that results never
/// depend on how work is split across threads.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(Engine& engine, std::size_t n) {
  auto i = static_cast<std::size_t>(uniform01(engine) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

inline bool bernoulli(Engine& engine, double p) { return uniform01(engine) < p; }

/// Beta(a, b) variate as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
double sample_beta(Engine& engine, double a, double b);

}  // namespace wpd
