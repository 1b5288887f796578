#include "wpd/random.hpp"

namespace wpd {

double sample_beta(Engine& engine, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(engine);
  const double y = gb(engine);
  const double s = x + y;
  // Both shapes tiny can underflow both draws; fall back to the mean.
  return s > 0.0 ? x / s : a / (a + b);
}

}  // namespace wpd
