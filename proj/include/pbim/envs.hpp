#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbim/mdp.hpp"

namespace pbim {

struct GridCell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(GridCell, GridCell) = default;
};

/// Deterministic cliff walking. The agent starts bottom-left, the goal is
/// bottom-right and every other bottom-row cell is cliff. Entering a cliff
/// gives -100 and ends the episode, entering the goal gives +100 and ends it,
/// everything else costs -1. Off-grid moves leave the agent in place.
class CliffWalkingEnv : public Environment {
 public:
  enum Action : std::size_t { kUp = 0, kRight = 1, kDown = 2, kLeft = 3 };

  static constexpr double kStepReward = -1.0;
  static constexpr double kCliffReward = -100.0;
  static constexpr double kGoalReward = 100.0;

  explicit CliffWalkingEnv(std::size_t width = 12, std::size_t height = 4,
                           std::size_t max_steps = 100);

  std::string_view name() const override { return "cliff"; }
  std::size_t state_count() const override { return width_ * height_; }
  std::size_t action_count() const override { return 4; }
  std::size_t max_steps() const override { return max_steps_; }
  StateId start_state() const override { return encode({height_ - 1, 0}); }
  StepOutcome model(StateId s, ActionId a) const override;
  std::unique_ptr<Environment> clone() const override;

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  StateId encode(GridCell c) const { return StateId{c.row * width_ + c.col}; }
  GridCell decode(StateId s) const { return {s.value / width_, s.value % width_}; }
  StateId goal_state() const { return encode({height_ - 1, width_ - 1}); }
  bool is_cliff(GridCell c) const noexcept;
  bool is_goal(GridCell c) const noexcept;

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t max_steps_;
};

/// The 4 x 50 variant.
class LongCliffWalkingEnv : public CliffWalkingEnv {
 public:
  explicit LongCliffWalkingEnv(std::size_t max_steps = 100) : CliffWalkingEnv(50, 4, max_steps) {}

  std::string_view name() const override { return "cliff_long"; }
  std::unique_ptr<Environment> clone() const override;
};

/// A corridor of `length` cells. `advance` moves one cell right, `stall`
/// stays. Reaching the last cell gives `goal_reward` and terminates; the
/// episode truncates after `horizon` steps.
class ChainMDPEnv : public Environment {
 public:
  enum Action : std::size_t { kAdvance = 0, kStall = 1 };

  ChainMDPEnv(std::size_t length, std::size_t horizon, double goal_reward = 1.0,
              double step_reward = 0.0);

  std::string_view name() const override { return "chain"; }
  std::size_t state_count() const override { return length_ + 1; }
  std::size_t action_count() const override { return 2; }
  std::size_t max_steps() const override { return horizon_; }
  StateId start_state() const override { return StateId{0}; }
  StepOutcome model(StateId s, ActionId a) const override;
  std::unique_ptr<Environment> clone() const override;

  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t length_;
  std::size_t horizon_;
  double goal_reward_;
  double step_reward_;
};

/// Two rooms split by a wall column with one locked door. The agent must step
/// onto the key cell, pick the key up, toggle the door from an adjacent cell
/// while carrying the key, and walk to the goal. Reward 1 on reaching the
/// goal, 0 otherwise. No orientation, no procedural generation.
///
/// The state index encodes (position, carrying key, door open); the counter
/// key drops the door status and keeps (row, col, carrying).
class KeyDoorGridEnv : public Environment {
 public:
  enum Action : std::size_t { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kPickup = 4, kToggle = 5 };

  struct Layout {
    std::size_t width = 8;
    std::size_t height = 8;
    std::size_t wall_col = 4;
    std::size_t door_row = 2;
    GridCell start{0, 0};
    GridCell key{6, 1};
    GridCell goal{7, 7};
    std::size_t max_steps = 640;

    // 4 x 4 room whose shortest solution is right, pickup, toggle, right, right.
    static Layout compact4(std::size_t max_steps = 6);
    // Resizes the default layout: wall in the middle column, key near the
    // bottom-left, goal bottom-right.
    static Layout sized(std::size_t width, std::size_t height, std::size_t max_steps);
  };

  struct Decoded {
    GridCell cell;
    bool carrying = false;
    bool door_open = false;
  };

  KeyDoorGridEnv();
  explicit KeyDoorGridEnv(Layout layout);

  std::string_view name() const override { return "keydoor"; }
  std::size_t state_count() const override { return layout_.width * layout_.height * 4; }
  std::size_t action_count() const override { return 6; }
  std::size_t max_steps() const override { return layout_.max_steps; }
  StateId start_state() const override { return encode({layout_.start, false, false}); }
  StepOutcome model(StateId s, ActionId a) const override;
  std::uint64_t counter_key(StateId s) const override;
  std::unique_ptr<Environment> clone() const override;

  const Layout& layout() const noexcept { return layout_; }
  StateId encode(const Decoded& d) const;
  Decoded decode(StateId s) const;

 private:
  bool is_wall(GridCell c) const noexcept;
  bool is_door(GridCell c) const noexcept;

  Layout layout_;
};

/// Environment selection by name with optional geometry overrides.
struct EnvSpec {
  std::string name = "cliff";
  std::optional<std::size_t> width;
  std::optional<std::size_t> height;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> length;  // chain only
  std::optional<double> goal_reward;  // chain only
};

/// Throws ConfigError (key "env") for unknown names.
std::unique_ptr<Environment> make_environment(const EnvSpec& spec);

/// Invokes `visit` for every action sequence of length at most `horizon` that
/// is consistent with episode termination: a sequence stops at the step that
/// ends the episode, otherwise it has exactly `horizon` actions. Sequences are
/// produced in lexicographic order of action indices. Throws SizeError when
/// action_count^horizon exceeds `budget`.
void for_each_action_sequence(const Environment& env, std::size_t horizon,
                              const std::function<void(std::span<const ActionId>)>& visit,
                              std::size_t budget = 1'000'000);

std::vector<std::vector<ActionId>> enumerate_action_sequences(const Environment& env,
                                                              std::size_t horizon,
                                                              std::size_t budget = 1'000'000);

}  // namespace pbim
