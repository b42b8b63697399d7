#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pbim/network.hpp"

namespace pbim::testing {

// Largest elementwise relative error between backprop and central finite
// differences for one random network, input and target. The denominator is
// floored at 1e-6: below that, double-precision roundoff in the difference
// quotient (about 1e-11 absolute at eps 1e-5) dominates.
inline double gradient_check_max_rel_error(std::uint64_t seed, double eps = 1e-5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> width(2, 9);
  std::vector<std::size_t> sizes{width(rng), width(rng), width(rng), width(rng)};
  FeedForwardNet net(sizes, rng, seed % 2 == 0 ? FeedForwardNet::Init::unit_normal
                                                : FeedForwardNet::Init::fan_in_uniform);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& p : net.parameters()) p += 0.1 * normal(rng);

  std::vector<double> x(sizes.front()), target(sizes.back());
  for (double& v : x) v = normal(rng);
  for (double& v : target) v = normal(rng);
  const auto input = FeedForwardNet::Input::of(x);

  std::vector<double> grad(net.parameters().size());
  net.loss_and_gradient(input, target, grad);

  double worst = 0.0;
  auto params = net.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + eps;
    const double up = net.loss(input, target);
    params[i] = saved - eps;
    const double down = net.loss(input, target);
    params[i] = saved;
    const double numeric = (up - down) / (2 * eps);
    const double scale = std::max({std::fabs(numeric), std::fabs(grad[i]), 1e-6});
    worst = std::max(worst, std::fabs(numeric - grad[i]) / scale);
  }
  return worst;
}

}  // namespace pbim::testing
