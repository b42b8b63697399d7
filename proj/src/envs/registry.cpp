#include <cmath>
#include <string>

#include "pbim/envs.hpp"
#include "pbim/errors.hpp"

namespace pbim {

std::unique_ptr<Environment> make_environment(const EnvSpec& spec) {
  if (spec.name == "cliff") {
    return std::make_unique<CliffWalkingEnv>(spec.width.value_or(12), spec.height.value_or(4),
                                             spec.max_steps.value_or(100));
  }
  if (spec.name == "cliff_long") {
    if (spec.width || spec.height)
      throw ConfigError("env.width", "cliff_long has fixed 4 x 50 geometry; use env=cliff instead");
    return std::make_unique<LongCliffWalkingEnv>(spec.max_steps.value_or(100));
  }
  if (spec.name == "chain") {
    return std::make_unique<ChainMDPEnv>(spec.length.value_or(3), spec.max_steps.value_or(6),
                                         spec.goal_reward.value_or(1.0));
  }
  if (spec.name == "keydoor") {
    KeyDoorGridEnv::Layout layout;
    if (spec.width || spec.height) {
      const std::size_t w = spec.width.value_or(8);
      const std::size_t h = spec.height.value_or(8);
      layout = (w == 4 && h == 4) ? KeyDoorGridEnv::Layout::compact4(layout.max_steps)
                                  : KeyDoorGridEnv::Layout::sized(w, h, layout.max_steps);
    }
    if (spec.max_steps) layout.max_steps = *spec.max_steps;
    return std::make_unique<KeyDoorGridEnv>(layout);
  }
  throw ConfigError("env", "unknown environment '" + spec.name +
                               "' (expected cliff, cliff_long, chain or keydoor)");
}

namespace {

void extend(const Environment& parent, std::size_t horizon, std::vector<ActionId>& prefix,
            const std::function<void(std::span<const ActionId>)>& visit) {
  if (prefix.size() == horizon) {
    visit(prefix);
    return;
  }
  for (std::size_t a = 0; a < parent.action_count(); ++a) {
    auto child = parent.clone();
    child->step(ActionId{a});
    prefix.push_back(ActionId{a});
    if (child->episode_over())
      visit(prefix);
    else
      extend(*child, horizon, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void for_each_action_sequence(const Environment& env, std::size_t horizon,
                              const std::function<void(std::span<const ActionId>)>& visit,
                              std::size_t budget) {
  if (!env.deterministic())
    throw std::invalid_argument("action-sequence enumeration needs a deterministic environment");
  const double size = std::pow(static_cast<double>(env.action_count()), static_cast<double>(horizon));
  if (size > static_cast<double>(budget))
    throw SizeError("enumerating " + std::to_string(env.action_count()) + "^" +
                    std::to_string(horizon) + " action sequences exceeds budget " +
                    std::to_string(budget));
  if (horizon == 0) return;
  auto root = env.clone();
  root->reset(0);
  std::vector<ActionId> prefix;
  prefix.reserve(horizon);
  extend(*root, horizon, prefix, visit);
}

std::vector<std::vector<ActionId>> enumerate_action_sequences(const Environment& env,
                                                              std::size_t horizon,
                                                              std::size_t budget) {
  std::vector<std::vector<ActionId>> out;
  for_each_action_sequence(
      env, horizon, [&](std::span<const ActionId> seq) { out.emplace_back(seq.begin(), seq.end()); },
      budget);
  return out;
}

}  // namespace pbim
