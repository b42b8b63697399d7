#include "pbim/agents.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pbim/errors.hpp"

namespace pbim {

QTable::QTable(std::size_t state_count, std::size_t action_count, double learning_rate,
               double gamma)
    : states_(state_count), actions_(action_count), lr_(learning_rate), gamma_(gamma) {
  if (state_count == 0 || action_count == 0) throw std::invalid_argument("empty Q-table");
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0))
    throw std::invalid_argument("learning rate must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  values_.assign(states_ * actions_, 0.0);
}

std::size_t QTable::index(StateId s, ActionId a) const {
  if (s.value >= states_ || a.value >= actions_)
    throw IndexDomainError("Q-table index (" + std::to_string(s.value) + ", " +
                           std::to_string(a.value) + ") out of range");
  return s.value * actions_ + a.value;
}

std::span<const double> QTable::row(StateId s) const {
  return std::span<const double>(values_).subspan(index(s, ActionId{0}), actions_);
}

double QTable::max_value(StateId s) const {
  const auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

ActionId QTable::greedy(StateId s) const {
  const auto r = row(s);
  // max_element returns the first maximum, which is the lowest-index tie-break.
  return ActionId{static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin())};
}

void QTable::q_update(const Transition& tr, double total_reward) {
  const double bootstrap = tr.terminated ? 0.0 : gamma_ * max_value(tr.next_state);
  double& q = at(tr.state, tr.action);
  q += lr_ * (total_reward + bootstrap - q);
}

Policy Policy::greedy(const QTable& q) {
  Policy p;
  p.action.reserve(q.state_count());
  for (std::size_t s = 0; s < q.state_count(); ++s) p.action.push_back(q.greedy(StateId{s}));
  return p;
}

double EpsilonSchedule::at(std::size_t episode) const noexcept {
  return std::max(floor, start - static_cast<double>(episode) * decrement_per_episode);
}

ActionId epsilon_greedy_act(const QTable& q, StateId s, double epsilon, std::mt19937_64& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, q.action_count() - 1);
    return ActionId{pick(rng)};
  }
  return q.greedy(s);
}

GreedyRollout run_greedy(Environment& env, const QTable& q, std::uint64_t seed) {
  GreedyRollout out;
  StateId s = env.reset(seed);
  while (!env.episode_over()) {
    const Transition tr = env.step(q.greedy(s));
    out.extrinsic_return += tr.extrinsic_reward;
    out.trajectory.transitions.push_back(tr);
    s = tr.next_state;
    if (tr.terminated && tr.extrinsic_reward > 0.0) out.reached_goal = true;
  }
  out.steps = out.trajectory.transitions.size();
  return out;
}

ValueIterationResult value_iteration_optimal(const Environment& env, double gamma,
                                             std::size_t horizon, ImKind im) {
  if (im != ImKind::none)
    throw std::invalid_argument("value iteration needs Markovian rewards; intrinsic bonuses are "
                                "history-dependent");
  if (!env.deterministic())
    throw std::domain_error("value iteration oracle supports deterministic environments only");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");

  const std::size_t ns = env.state_count();
  const std::size_t na = env.action_count();

  // Outcomes are time-independent, so tabulate them once.
  std::vector<StepOutcome> outcome(ns * na);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t a = 0; a < na; ++a) outcome[s * na + a] = env.model(StateId{s}, ActionId{a});

  ValueIterationResult res;
  res.values.assign(horizon + 1, std::vector<double>(ns, 0.0));
  res.policy.assign(horizon, std::vector<ActionId>(ns));
  for (std::size_t t = horizon; t-- > 0;) {
    for (std::size_t s = 0; s < ns; ++s) {
      double best = 0.0;
      std::size_t best_a = 0;
      for (std::size_t a = 0; a < na; ++a) {
        const StepOutcome& o = outcome[s * na + a];
        const double q = o.reward + (o.terminated ? 0.0 : gamma * res.values[t + 1][o.next.value]);
        if (a == 0 || q > best) {
          best = q;
          best_a = a;
        }
      }
      res.values[t][s] = best;
      res.policy[t][s] = ActionId{best_a};
    }
  }
  res.optimal_return = res.values[0][env.start_state().value];
  return res;
}

}  // namespace pbim
