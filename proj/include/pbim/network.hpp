#pragma once

#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace pbim {

/// Fully connected network with tanh hidden layers and a linear output layer.
///
/// Parameters live in one flat buffer, layer by layer, each layer stored as
/// a row-major weight matrix [out x in] followed by its bias vector. The flat
/// layout is what the finite-difference checks and the parameter copy in the
/// tests rely on.
class FeedForwardNet {
 public:
  /// Input to a forward pass: either a dense vector or a one-hot index into
  /// the input dimension.
  struct Input {
    std::span<const double> dense{};
    std::size_t one_hot = std::numeric_limits<std::size_t>::max();

    static Input of(std::span<const double> x) { return Input{x, std::numeric_limits<std::size_t>::max()}; }
    static Input hot(std::size_t i) { return Input{{}, i}; }
    bool is_one_hot() const noexcept { return one_hot != std::numeric_limits<std::size_t>::max(); }
  };

  /// Parameter initialization.
  ///  - unit_normal: weights N(0, 1/fan_in) except the first layer, which is
  ///    N(0, 1) so one-hot inputs reach the hidden layers at unit scale;
  ///    biases 0.
  ///  - fan_in_uniform: weights and biases U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  enum class Init { unit_normal, fan_in_uniform };

  /// `layer_sizes` = {inputs, hidden..., outputs}.
  FeedForwardNet(std::vector<std::size_t> layer_sizes, std::mt19937_64& rng,
                 Init init = Init::unit_normal);

  std::size_t input_size() const noexcept { return sizes_.front(); }
  std::size_t output_size() const noexcept { return sizes_.back(); }
  const std::vector<std::size_t>& layer_sizes() const noexcept { return sizes_; }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  std::vector<double> forward(Input x) const;

  /// Mean squared error against `target` and its gradient with respect to the
  /// parameters (written into `grad`, which must match parameters().size()).
  double loss_and_gradient(Input x, std::span<const double> target, std::span<double> grad) const;

  double loss(Input x, std::span<const double> target) const;

 private:
  struct Layer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t weight_offset = 0;
    std::size_t bias_offset = 0;
  };

  // Returns activations per layer; acts[0] is unused for one-hot input.
  void run(Input x, std::vector<std::vector<double>>& acts) const;

  std::vector<std::size_t> sizes_;
  std::vector<Layer> layers_;
  std::vector<double> params_;
};

}  // namespace pbim
