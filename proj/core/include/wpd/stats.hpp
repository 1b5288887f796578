#pragma once

#include <cstddef>
#include <span>

namespace wpd {

/// Pairwise (cascade) summation. The result depends only on the input order.
double pairwise_sum(std::span<const double> values);

struct SampleStats {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(n); zero when n < 2
  std::size_t count = 0;
};

SampleStats sample_stats(std::span<const double> values);

}  // namespace wpd
