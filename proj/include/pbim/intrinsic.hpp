#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "pbim/mdp.hpp"
#include "pbim/network.hpp"

namespace pbim {

/// Source of a raw intrinsic reward F_t, one value per environment step.
/// Implementations may depend on anything observed so far but never on
/// future actions.
class IntrinsicMotivation {
 public:
  virtual ~IntrinsicMotivation() = default;

  virtual void begin_episode(const Environment& env, StateId start) = 0;
  /// Raw bonus for the step just taken. May update internal models.
  virtual double on_step(const Environment& env, const Transition& tr) = 0;
  virtual std::unique_ptr<IntrinsicMotivation> clone() const = 0;
};

class NoIntrinsic final : public IntrinsicMotivation {
 public:
  void begin_episode(const Environment&, StateId) override {}
  double on_step(const Environment&, const Transition&) override { return 0.0; }
  std::unique_ptr<IntrinsicMotivation> clone() const override {
    return std::make_unique<NoIntrinsic>(*this);
  }
};

/// Episodic count bonus alpha / n(key). Counts reset at every episode start;
/// the start state is counted once on reset without emitting a bonus, so
/// stalling on a tile visited n times yields alpha/(n+1), alpha/(n+2), ...
class CountBasedIM final : public IntrinsicMotivation {
 public:
  explicit CountBasedIM(double alpha);

  double alpha() const noexcept { return alpha_; }

  /// Increments the count for `key` and returns alpha / (new count).
  double count_reward(std::uint64_t key);
  std::uint32_t count(std::uint64_t key) const;
  void clear() { counts_.clear(); }

  void begin_episode(const Environment& env, StateId start) override;
  double on_step(const Environment& env, const Transition& tr) override;
  std::unique_ptr<IntrinsicMotivation> clone() const override {
    return std::make_unique<CountBasedIM>(*this);
  }

 private:
  double alpha_;
  std::unordered_map<std::uint64_t, std::uint32_t> counts_;
};

struct RndConfig {
  std::size_t hidden = 16;
  std::size_t hidden_layers = 2;
  std::size_t out_dim = 8;
  double lr = 1e-6;
  double scale = 1000.0;
  std::uint64_t seed = 0;
  FeedForwardNet::Init init = FeedForwardNet::Init::fan_in_uniform;
};

FeedForwardNet::Init parse_net_init(std::string_view name);
std::string_view to_string(FeedForwardNet::Init init);

/// Random network distillation over one-hot states. The target network is
/// fixed at construction; the predictor is trained by plain gradient descent
/// on the mean squared error. The bonus is scale * MSE on the reached state.
class RndModule final : public IntrinsicMotivation {
 public:
  RndModule(std::size_t state_count, const RndConfig& config);

  const RndConfig& config() const noexcept { return config_; }
  std::size_t state_count() const noexcept { return state_count_; }

  /// scale * MSE(predictor(s), target(s)); never negative.
  double rnd_reward(StateId s) const;
  /// Unscaled prediction error.
  double prediction_error(StateId s) const;
  /// One gradient step on the predictor for state `s`. Returns the loss
  /// measured before the update.
  double rnd_train_step(StateId s);

  const FeedForwardNet& target() const noexcept { return target_; }
  const FeedForwardNet& predictor() const noexcept { return predictor_; }
  FeedForwardNet& mutable_predictor() noexcept { return predictor_; }

  void begin_episode(const Environment&, StateId) override {}
  double on_step(const Environment& env, const Transition& tr) override;
  std::unique_ptr<IntrinsicMotivation> clone() const override {
    return std::make_unique<RndModule>(*this);
  }

 private:
  std::vector<double> target_output(StateId s) const;

  RndConfig config_;
  std::size_t state_count_;
  FeedForwardNet target_;
  FeedForwardNet predictor_;
  std::vector<double> grad_;
};

/// Running mean of raw intrinsic rewards.
///
/// `absorb` accumulates, `refresh` publishes the cumulative mean as the
/// frozen value used by the converter during the next episode. Workers keep
/// their own trackers and combine them with `merge` at sync points.
class MeanTracker {
 public:
  void absorb(std::span<const double> raw_rewards);
  void refresh() noexcept;
  /// absorb followed by refresh.
  void update(std::span<const double> raw_rewards);
  void merge(const MeanTracker& other) noexcept;

  double running_sum() const noexcept { return sum_; }
  std::uint64_t running_count() const noexcept { return count_; }
  double running_mean() const noexcept;
  double frozen_mean() const noexcept { return frozen_; }

  /// Pins the frozen mean, e.g. for verification with a supplied value.
  void set_frozen_mean(double value) noexcept { frozen_ = value; }

 private:
  double sum_ = 0.0;
  std::uint64_t count_ = 0;
  double frozen_ = 0.0;
};

enum class ImKind { none, count, rnd };

struct IntrinsicSpec {
  ImKind kind = ImKind::none;
  double alpha = 0.1;
  RndConfig rnd{};
};

ImKind parse_im_kind(const std::string& name);
std::string to_string(ImKind kind);

std::unique_ptr<IntrinsicMotivation> make_intrinsic(const IntrinsicSpec& spec,
                                                    std::size_t state_count);

}  // namespace pbim
