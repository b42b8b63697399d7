#include <stdexcept>

#include "pbim/envs.hpp"

namespace pbim {

CliffWalkingEnv::CliffWalkingEnv(std::size_t width, std::size_t height, std::size_t max_steps)
    : width_(width), height_(height), max_steps_(max_steps) {
  if (width < 2 || height < 2) throw std::invalid_argument("cliff grid must be at least 2 x 2");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

bool CliffWalkingEnv::is_cliff(GridCell c) const noexcept {
  return c.row == height_ - 1 && c.col > 0 && c.col < width_ - 1;
}

bool CliffWalkingEnv::is_goal(GridCell c) const noexcept {
  return c.row == height_ - 1 && c.col == width_ - 1;
}

StepOutcome CliffWalkingEnv::model(StateId s, ActionId a) const {
  GridCell c = decode(s);
  // Cliff and goal cells are absorbing; they are never entered mid-episode.
  if (is_cliff(c) || is_goal(c)) return {s, 0.0, true};

  switch (a.value) {
    case kUp:
      if (c.row > 0) --c.row;
      break;
    case kRight:
      if (c.col + 1 < width_) ++c.col;
      break;
    case kDown:
      if (c.row + 1 < height_) ++c.row;
      break;
    case kLeft:
      if (c.col > 0) --c.col;
      break;
    default:
      throw std::invalid_argument("cliff walking has four actions");
  }
  if (is_cliff(c)) return {encode(c), kCliffReward, true};
  if (is_goal(c)) return {encode(c), kGoalReward, true};
  return {encode(c), kStepReward, false};
}

std::unique_ptr<Environment> CliffWalkingEnv::clone() const {
  return std::make_unique<CliffWalkingEnv>(*this);
}

std::unique_ptr<Environment> LongCliffWalkingEnv::clone() const {
  return std::make_unique<LongCliffWalkingEnv>(*this);
}

}  // namespace pbim
