#include "pbim/mdp.hpp"

#include <stdexcept>
#include <string>

#include "pbim/errors.hpp"

namespace pbim {

bool Trajectory::well_formed() const noexcept {
  if (transitions.empty()) return false;
  for (std::size_t k = 0; k + 1 < transitions.size(); ++k) {
    if (transitions[k].ends_episode()) return false;
    if (transitions[k].next_state != transitions[k + 1].state) return false;
  }
  return transitions.back().ends_episode();
}

std::vector<double> Trajectory::extrinsic_rewards() const {
  std::vector<double> out;
  out.reserve(transitions.size());
  for (const auto& tr : transitions) out.push_back(tr.extrinsic_reward);
  return out;
}

void DiscountSpec::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("discount factor must lie in [0, 1], got " + std::to_string(gamma));
  if (horizon_cap < 1) throw std::invalid_argument("horizon cap must be at least 1");
}

double discounted_return(std::span<const double> rewards, const DiscountSpec& spec,
                         std::size_t t) {
  spec.validate();
  if (t > rewards.size())
    throw IndexDomainError("return start " + std::to_string(t) + " exceeds episode length " +
                           std::to_string(rewards.size()));
  double acc = 0.0;
  for (std::size_t n = rewards.size(); n > t; --n) acc = rewards[n - 1] + spec.gamma * acc;
  return acc;
}

StateId Environment::reset(std::uint64_t seed) {
  rng_.seed(seed);
  state_ = start_state();
  steps_ = 0;
  done_ = false;
  return state_;
}

Transition Environment::step(ActionId a) {
  if (done_) throw ProtocolError(std::string(name()) + ": step called on an ended episode");
  if (a.value >= action_count())
    throw IndexDomainError(std::string(name()) + ": action " + std::to_string(a.value) +
                           " out of range");
  const StepOutcome out = sample(state_, a, rng_);
  Transition tr;
  tr.state = state_;
  tr.action = a;
  tr.extrinsic_reward = out.reward;
  tr.next_state = out.next;
  tr.terminated = out.terminated;
  ++steps_;
  tr.truncated = !out.terminated && steps_ >= max_steps();
  state_ = out.next;
  done_ = tr.ends_episode();
  return tr;
}

Trajectory rollout(Environment& env, std::span<const ActionId> actions, std::uint64_t seed) {
  Trajectory traj;
  env.reset(seed);
  for (ActionId a : actions) {
    traj.transitions.push_back(env.step(a));
    if (env.episode_over()) break;
  }
  return traj;
}

}  // namespace pbim
