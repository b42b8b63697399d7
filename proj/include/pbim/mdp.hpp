#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pbim {

/// Dense index into an environment's enumerated state space.
struct StateId {
  std::size_t value = 0;

  constexpr StateId() = default;
  constexpr explicit StateId(std::size_t v) : value(v) {}
  friend constexpr auto operator<=>(StateId, StateId) = default;
};

/// Dense index into an environment's enumerated action space.
struct ActionId {
  std::size_t value = 0;

  constexpr ActionId() = default;
  constexpr explicit ActionId(std::size_t v) : value(v) {}
  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

struct Transition {
  StateId state;
  ActionId action;
  double extrinsic_reward = 0.0;
  StateId next_state;
  bool terminated = false;  // absorbing end reached
  bool truncated = false;   // step cap reached without termination

  bool ends_episode() const noexcept { return terminated || truncated; }
};

/// One episode's ordered step record.
struct Trajectory {
  std::vector<Transition> transitions;
  std::size_t episode_index = 0;

  /// Chaining, non-empty, and only the last transition ends the episode.
  bool well_formed() const noexcept;
  std::vector<double> extrinsic_rewards() const;
};

struct DiscountSpec {
  double gamma = 1.0;
  std::size_t horizon_cap = 1;

  /// Throws std::invalid_argument when gamma is outside [0, 1] or the cap is zero.
  void validate() const;
};

/// Sum over n in [t, N) of gamma^(n-t) * rewards[n], with N = rewards.size().
/// Returns 0 for t == N and throws IndexDomainError for t > N.
double discounted_return(std::span<const double> rewards, const DiscountSpec& spec,
                         std::size_t t = 0);

/// Result of applying an action to a state under the environment's dynamics,
/// without the episode bookkeeping (step counter, truncation).
struct StepOutcome {
  StateId next;
  double reward = 0.0;
  bool terminated = false;
};

/// Episodic environment over dense state and action indices.
///
/// Subclasses supply the dynamics through `sample` (or `model` when
/// deterministic); the base class owns the episode protocol: reset reseeds and
/// returns the start state, step advances the counter and truncates at
/// `max_steps()`, and stepping an ended episode throws ProtocolError.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t state_count() const = 0;
  virtual std::size_t action_count() const = 0;
  virtual std::size_t max_steps() const = 0;
  virtual StateId start_state() const = 0;
  virtual bool deterministic() const { return true; }

  // Expected dynamics for deterministic environments. Stochastic ones should
  // override `sample` as well.
  virtual StepOutcome model(StateId s, ActionId a) const = 0;
  virtual StepOutcome sample(StateId s, ActionId a, std::mt19937_64& /*rng*/) const {
    return model(s, a);
  }

  // Projection used by count-based bonuses; defaults to the state index.
  virtual std::uint64_t counter_key(StateId s) const { return s.value; }

  virtual std::unique_ptr<Environment> clone() const = 0;

  StateId reset(std::uint64_t seed);
  Transition step(ActionId a);

  StateId state() const noexcept { return state_; }
  std::size_t steps_taken() const noexcept { return steps_; }
  bool episode_over() const noexcept { return done_; }

 protected:
  Environment() = default;
  Environment(const Environment&) = default;
  Environment& operator=(const Environment&) = default;

 private:
  std::mt19937_64 rng_;
  StateId state_;
  std::size_t steps_ = 0;
  bool done_ = true;
};

/// Runs `actions` from a fresh reset and records the transitions. Stops early
/// if the episode ends before the sequence is exhausted.
Trajectory rollout(Environment& env, std::span<const ActionId> actions, std::uint64_t seed = 0);

}  // namespace pbim
