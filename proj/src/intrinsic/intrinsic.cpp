#include "pbim/intrinsic.hpp"

#include <stdexcept>

#include "pbim/errors.hpp"

namespace pbim {

CountBasedIM::CountBasedIM(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("count bonus coefficient must be non-negative");
}

double CountBasedIM::count_reward(std::uint64_t key) {
  const std::uint32_t n = ++counts_[key];
  return alpha_ / static_cast<double>(n);
}

std::uint32_t CountBasedIM::count(std::uint64_t key) const {
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

void CountBasedIM::begin_episode(const Environment& env, StateId start) {
  counts_.clear();
  ++counts_[env.counter_key(start)];
}

double CountBasedIM::on_step(const Environment& env, const Transition& tr) {
  return count_reward(env.counter_key(tr.next_state));
}

namespace {

std::vector<std::size_t> rnd_layers(std::size_t state_count, const RndConfig& c) {
  std::vector<std::size_t> sizes{state_count};
  for (std::size_t i = 0; i < c.hidden_layers; ++i) sizes.push_back(c.hidden);
  sizes.push_back(c.out_dim);
  return sizes;
}

FeedForwardNet seeded_net(std::size_t state_count, const RndConfig& c, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  return FeedForwardNet(rnd_layers(state_count, c), rng, c.init);
}

}  // namespace

FeedForwardNet::Init parse_net_init(std::string_view name) {
  if (name == "unit_normal") return FeedForwardNet::Init::unit_normal;
  if (name == "fan_in_uniform") return FeedForwardNet::Init::fan_in_uniform;
  throw ConfigError("rnd.init", "unknown network init '" + std::string(name) + "'");
}

std::string_view to_string(FeedForwardNet::Init init) {
  return init == FeedForwardNet::Init::unit_normal ? "unit_normal" : "fan_in_uniform";
}

RndModule::RndModule(std::size_t state_count, const RndConfig& config)
    : config_(config),
      state_count_(state_count),
      target_(seeded_net(state_count, config, 1)),
      predictor_(seeded_net(state_count, config, 2)) {
  if (state_count == 0) throw std::invalid_argument("RND needs a non-empty state space");
  if (config.lr < 0.0) throw std::invalid_argument("RND learning rate must be non-negative");
  if (config.scale < 0.0) throw std::invalid_argument("RND reward scale must be non-negative");
  grad_.resize(predictor_.parameters().size());
}

std::vector<double> RndModule::target_output(StateId s) const {
  if (s.value >= state_count_) throw IndexDomainError("RND state outside the state space");
  return target_.forward(FeedForwardNet::Input::hot(s.value));
}

double RndModule::prediction_error(StateId s) const {
  const auto y = target_output(s);
  return predictor_.loss(FeedForwardNet::Input::hot(s.value), y);
}

double RndModule::rnd_reward(StateId s) const { return config_.scale * prediction_error(s); }

double RndModule::rnd_train_step(StateId s) {
  const auto y = target_output(s);
  const double loss = predictor_.loss_and_gradient(FeedForwardNet::Input::hot(s.value), y, grad_);
  if (config_.lr != 0.0) {
    auto p = predictor_.parameters();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= config_.lr * grad_[i];
  }
  return loss;
}

double RndModule::on_step(const Environment&, const Transition& tr) {
  // The loss returned by the training step is the pre-update error, which is
  // exactly the bonus for this visit.
  return config_.scale * rnd_train_step(tr.next_state);
}

void MeanTracker::absorb(std::span<const double> raw_rewards) {
  for (double r : raw_rewards) sum_ += r;
  count_ += raw_rewards.size();
}

void MeanTracker::refresh() noexcept { frozen_ = running_mean(); }

void MeanTracker::update(std::span<const double> raw_rewards) {
  absorb(raw_rewards);
  refresh();
}

void MeanTracker::merge(const MeanTracker& other) noexcept {
  sum_ += other.sum_;
  count_ += other.count_;
}

double MeanTracker::running_mean() const noexcept {
  return count_ == 0 ? 0.0 : sum_ / static_cast<double>(count_);
}

ImKind parse_im_kind(const std::string& name) {
  if (name == "none") return ImKind::none;
  if (name == "count") return ImKind::count;
  if (name == "rnd") return ImKind::rnd;
  throw ConfigError("im", "unknown intrinsic motivation '" + name + "' (expected none, count or rnd)");
}

std::string to_string(ImKind kind) {
  switch (kind) {
    case ImKind::none:
      return "none";
    case ImKind::count:
      return "count";
    case ImKind::rnd:
      return "rnd";
  }
  return "none";
}

std::unique_ptr<IntrinsicMotivation> make_intrinsic(const IntrinsicSpec& spec,
                                                    std::size_t state_count) {
  switch (spec.kind) {
    case ImKind::none:
      return std::make_unique<NoIntrinsic>();
    case ImKind::count:
      return std::make_unique<CountBasedIM>(spec.alpha);
    case ImKind::rnd:
      return std::make_unique<RndModule>(state_count, spec.rnd);
  }
  return std::make_unique<NoIntrinsic>();
}

}  // namespace pbim
