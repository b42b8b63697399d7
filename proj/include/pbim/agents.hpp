#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "pbim/intrinsic.hpp"
#include "pbim/mdp.hpp"

namespace pbim {

/// Dense [state x action] action-value table, zero-initialised.
class QTable {
 public:
  QTable(std::size_t state_count, std::size_t action_count, double learning_rate, double gamma);

  std::size_t state_count() const noexcept { return states_; }
  std::size_t action_count() const noexcept { return actions_; }
  double learning_rate() const noexcept { return lr_; }
  double gamma() const noexcept { return gamma_; }

  double operator()(StateId s, ActionId a) const { return values_[index(s, a)]; }
  double& at(StateId s, ActionId a) { return values_[index(s, a)]; }
  std::span<const double> row(StateId s) const;
  double max_value(StateId s) const;
  /// Greedy action, lowest index on ties.
  ActionId greedy(StateId s) const;

  /// Q(s,a) += lr * (r + gamma * max_a' Q(s',a') * [not terminated] - Q(s,a)).
  /// Truncated transitions still bootstrap.
  void q_update(const Transition& tr, double total_reward);

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t index(StateId s, ActionId a) const;

  std::size_t states_;
  std::size_t actions_;
  double lr_;
  double gamma_;
  std::vector<double> values_;
};

/// Greedy action per state, frozen from a QTable.
struct Policy {
  std::vector<ActionId> action;

  static Policy greedy(const QTable& q);
  ActionId operator()(StateId s) const { return action.at(s.value); }
};

/// epsilon(e) = max(floor, start - e * decrement).
struct EpsilonSchedule {
  double start = 1.0;
  double decrement_per_episode = 4e-4;
  double floor = 0.1;

  double at(std::size_t episode) const noexcept;
};

/// With probability epsilon a uniformly random action, otherwise greedy.
ActionId epsilon_greedy_act(const QTable& q, StateId s, double epsilon, std::mt19937_64& rng);

struct GreedyRollout {
  double extrinsic_return = 0.0;  // undiscounted
  std::size_t steps = 0;
  bool reached_goal = false;      // terminated with positive final reward
  Trajectory trajectory;
};

/// Executes the greedy policy of `q` for one episode.
GreedyRollout run_greedy(Environment& env, const QTable& q, std::uint64_t seed = 0);

struct ValueIterationResult {
  double optimal_return = 0.0;  // value of the start state at t = 0
  // policy[t][s]: optimal action at time t in state s.
  std::vector<std::vector<ActionId>> policy;
  std::vector<std::vector<double>> values;  // values[t][s], t in [0, horizon]
};

/// Exact backward induction over (state, time) for Markovian extrinsic
/// rewards. Terminating transitions contribute no continuation value; at
/// t == horizon the value is zero. Rejects any intrinsic reward spec, which
/// would make the reward history-dependent.
ValueIterationResult value_iteration_optimal(const Environment& env, double gamma,
                                             std::size_t horizon, ImKind im = ImKind::none);

}  // namespace pbim
