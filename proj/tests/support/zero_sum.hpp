#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pbim/shaping.hpp"

namespace pbim::testing {

struct ZeroSumOutcome {
  std::size_t episodes = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // |sum| / (1 + sum of magnitudes)
};

// Random episodes with lengths 1..50, raw bonuses uniform in [-1, 1] and gamma
// drawn from {0.9, 0.99, 1.0}; checks the discounted sum of emissions is zero.
inline ZeroSumOutcome zero_sum_property(ShapingMode mode, std::size_t episodes, std::uint64_t seed,
                                        double tolerance = 1e-9) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(1, 50);
  std::uniform_real_distribution<double> raw(-1.0, 1.0);
  const double gammas[] = {0.9, 0.99, 1.0};
  ZeroSumOutcome out;
  MeanTracker tracker;
  for (std::size_t e = 0; e < episodes; ++e) {
    const double gamma = gammas[e % 3];
    ShapingConverter conv(mode, gamma, &tracker);
    tracker.refresh();
    conv.begin_episode();
    const std::size_t n = length(rng);
    double sum = 0.0, mag = 0.0, discount = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double f = conv.shape_step(raw(rng), t + 1 == n);
      sum += discount * f;
      mag += std::fabs(discount * f);
      discount *= gamma;
    }
    const double ratio = std::fabs(sum) / (1.0 + mag);
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (ratio > tolerance) ++out.violations;
    ++out.episodes;
  }
  return out;
}

}  // namespace pbim::testing
