#include <stdexcept>

#include "pbim/envs.hpp"

namespace pbim {

ChainMDPEnv::ChainMDPEnv(std::size_t length, std::size_t horizon, double goal_reward,
                         double step_reward)
    : length_(length), horizon_(horizon), goal_reward_(goal_reward), step_reward_(step_reward) {
  if (length < 1) throw std::invalid_argument("chain length must be positive");
  if (horizon < 1) throw std::invalid_argument("chain horizon must be positive");
}

StepOutcome ChainMDPEnv::model(StateId s, ActionId a) const {
  if (s.value >= length_) return {s, 0.0, true};
  switch (a.value) {
    case kAdvance: {
      const StateId next{s.value + 1};
      if (next.value == length_) return {next, goal_reward_, true};
      return {next, step_reward_, false};
    }
    case kStall:
      return {s, step_reward_, false};
    default:
      throw std::invalid_argument("chain has two actions");
  }
}

std::unique_ptr<Environment> ChainMDPEnv::clone() const {
  return std::make_unique<ChainMDPEnv>(*this);
}

}  // namespace pbim
