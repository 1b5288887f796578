#include "wpd/stats.hpp"

#include <cmath>
#include <vector>

namespace wpd {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleStats sample_stats(std::span<const double> values) {
  SampleStats out;
  out.count = values.size();
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values) / n;
  if (values.size() < 2) return out;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  const double variance = pairwise_sum(sq) / (n - 1.0);
  out.std_error = std::sqrt(variance / n);
  return out;
}

}  // namespace wpd
