#include "pbim/network.hpp"

#include <cmath>
#include <stdexcept>

#include "pbim/errors.hpp"

namespace pbim {

FeedForwardNet::FeedForwardNet(std::vector<std::size_t> layer_sizes, std::mt19937_64& rng,
                               Init init)
    : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("network needs an input and an output layer");
  for (std::size_t s : sizes_)
    if (s == 0) throw std::invalid_argument("network layers must be non-empty");

  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    Layer layer{sizes_[l], sizes_[l + 1], offset, offset + sizes_[l] * sizes_[l + 1]};
    offset = layer.bias_offset + layer.out;
    layers_.push_back(layer);
  }
  params_.assign(offset, 0.0);

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const double inv_sqrt_fan_in = 1.0 / std::sqrt(static_cast<double>(layer.in));
    if (init == Init::unit_normal) {
      std::normal_distribution<double> dist(0.0, l == 0 ? 1.0 : inv_sqrt_fan_in);
      for (std::size_t i = 0; i < layer.in * layer.out; ++i) params_[layer.weight_offset + i] = dist(rng);
    } else {
      std::uniform_real_distribution<double> dist(-inv_sqrt_fan_in, inv_sqrt_fan_in);
      for (std::size_t i = 0; i < layer.in * layer.out + layer.out; ++i)
        params_[layer.weight_offset + i] = dist(rng);
    }
  }
}

void FeedForwardNet::run(Input x, std::vector<std::vector<double>>& acts) const {
  if (x.is_one_hot()) {
    if (x.one_hot >= input_size()) throw IndexDomainError("one-hot index outside network input");
  } else if (x.dense.size() != input_size()) {
    throw std::invalid_argument("network input has the wrong dimension");
  }
  acts.resize(layers_.size() + 1);
  if (!x.is_one_hot()) acts[0].assign(x.dense.begin(), x.dense.end());

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const double* w = params_.data() + layer.weight_offset;
    const double* b = params_.data() + layer.bias_offset;
    auto& out = acts[l + 1];
    out.assign(b, b + layer.out);
    if (l == 0 && x.is_one_hot()) {
      for (std::size_t o = 0; o < layer.out; ++o) out[o] += w[o * layer.in + x.one_hot];
    } else {
      const auto& in = acts[l];
      for (std::size_t o = 0; o < layer.out; ++o) {
        double acc = 0.0;
        for (std::size_t i = 0; i < layer.in; ++i) acc += w[o * layer.in + i] * in[i];
        out[o] += acc;
      }
    }
    if (l + 1 < layers_.size())
      for (double& v : out) v = std::tanh(v);
  }
}

std::vector<double> FeedForwardNet::forward(Input x) const {
  std::vector<std::vector<double>> acts;
  run(x, acts);
  return std::move(acts.back());
}

double FeedForwardNet::loss(Input x, std::span<const double> target) const {
  if (target.size() != output_size()) throw std::invalid_argument("target has the wrong dimension");
  const auto y = forward(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += (y[i] - target[i]) * (y[i] - target[i]);
  return sum / static_cast<double>(y.size());
}

double FeedForwardNet::loss_and_gradient(Input x, std::span<const double> target,
                                         std::span<double> grad) const {
  if (target.size() != output_size()) throw std::invalid_argument("target has the wrong dimension");
  if (grad.size() != params_.size()) throw std::invalid_argument("gradient buffer has the wrong size");

  std::vector<std::vector<double>> acts;
  run(x, acts);

  const auto& y = acts.back();
  const double n = static_cast<double>(y.size());
  double sum = 0.0;
  std::vector<double> delta(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double diff = y[i] - target[i];
    sum += diff * diff;
    delta[i] = 2.0 * diff / n;
  }

  for (std::size_t l = layers_.size(); l-- > 0;) {
    const Layer& layer = layers_[l];
    const double* w = params_.data() + layer.weight_offset;
    double* gw = grad.data() + layer.weight_offset;
    double* gb = grad.data() + layer.bias_offset;

    for (std::size_t o = 0; o < layer.out; ++o) gb[o] = delta[o];
    if (l == 0 && x.is_one_hot()) {
      for (std::size_t i = 0; i < layer.in * layer.out; ++i) gw[i] = 0.0;
      for (std::size_t o = 0; o < layer.out; ++o) gw[o * layer.in + x.one_hot] = delta[o];
    } else {
      const auto& in = acts[l];
      for (std::size_t o = 0; o < layer.out; ++o)
        for (std::size_t i = 0; i < layer.in; ++i) gw[o * layer.in + i] = delta[o] * in[i];
    }
    if (l == 0) break;

    // Back through the weights and the tanh of the layer below.
    std::vector<double> below(layer.in, 0.0);
    for (std::size_t o = 0; o < layer.out; ++o)
      for (std::size_t i = 0; i < layer.in; ++i) below[i] += w[o * layer.in + i] * delta[o];
    const auto& h = acts[l];
    for (std::size_t i = 0; i < layer.in; ++i) below[i] *= 1.0 - h[i] * h[i];
    delta = std::move(below);
  }
  return sum / n;
}

}  // namespace pbim
