#include <doctest.h>

#include <random>
#include <vector>

#include "pbim/envs.hpp"
#include "pbim/errors.hpp"
#include "pbim/mdp.hpp"

using namespace pbim;

TEST_CASE("discounted return of a short stream") {
  const std::vector<double> r{1, 2, 3};
  const DiscountSpec spec{0.5, 10};
  CHECK(discounted_return(r, spec, 0) == doctest::Approx(2.75));
  CHECK(discounted_return(r, spec, 1) == doctest::Approx(3.5));
  CHECK(discounted_return(r, spec, 3) == 0.0);
  CHECK_THROWS_AS(discounted_return(r, spec, 4), IndexDomainError);
}

TEST_CASE("discounted return rejects an invalid discount") {
  const std::vector<double> r{1};
  CHECK_THROWS_AS(discounted_return(r, DiscountSpec{1.5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(discounted_return(r, DiscountSpec{-0.1, 1}), std::invalid_argument);
}

TEST_CASE("discounted return satisfies the one-step recursion") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-10, 10);
  std::uniform_int_distribution<std::size_t> length(1, 40);
  std::uniform_real_distribution<double> discount(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> r(length(rng));
    for (auto& x : r) x = value(rng);
    const DiscountSpec spec{discount(rng), r.size()};
    for (std::size_t t = 0; t < r.size(); ++t) {
      const double lhs = discounted_return(r, spec, t);
      const double rhs = r[t] + spec.gamma * discounted_return(r, spec, t + 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("undiscounted return is the plain suffix sum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-5, 5);
  std::vector<double> r(30);
  for (auto& x : r) x = value(rng);
  for (std::size_t t = 0; t <= r.size(); ++t) {
    double sum = 0;
    for (std::size_t k = t; k < r.size(); ++k) sum += r[k];
    CHECK(discounted_return(r, DiscountSpec{1.0, 30}, t) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("stepping a finished episode is a protocol error") {
  ChainMDPEnv env(1, 3);
  CHECK_THROWS_AS(env.step(ActionId{0}), ProtocolError);
  env.reset(0);
  const Transition tr = env.step(ActionId{ChainMDPEnv::kAdvance});
  CHECK(tr.terminated);
  CHECK(env.episode_over());
  CHECK_THROWS_AS(env.step(ActionId{0}), ProtocolError);
}

TEST_CASE("out-of-range actions are rejected") {
  CliffWalkingEnv env;
  env.reset(0);
  CHECK_THROWS_AS(env.step(ActionId{4}), IndexDomainError);
  CHECK_FALSE(env.episode_over());
}

TEST_CASE("exactly the last transition of an episode ends it") {
  std::mt19937_64 rng(3);
  CliffWalkingEnv env(12, 4, 30);
  for (int episode = 0; episode < 50; ++episode) {
    std::vector<ActionId> actions;
    std::uniform_int_distribution<std::size_t> pick(0, 3);
    for (int i = 0; i < 40; ++i) actions.emplace_back(pick(rng));
    const Trajectory traj = rollout(env, actions, static_cast<std::uint64_t>(episode));
    CHECK(traj.well_formed());
    REQUIRE_FALSE(traj.transitions.empty());
    for (std::size_t i = 0; i + 1 < traj.transitions.size(); ++i) CHECK_FALSE(traj.transitions[i].ends_episode());
    const Transition& last = traj.transitions.back();
    CHECK(last.ends_episode());
    CHECK_FALSE((last.terminated && last.truncated));
  }
}

TEST_CASE("truncation fires at the step cap") {
  ChainMDPEnv env(3, 4);
  const std::vector<ActionId> stall(4, ActionId{ChainMDPEnv::kStall});
  const Trajectory traj = rollout(env, stall);
  REQUIRE(traj.transitions.size() == 4);
  CHECK(traj.transitions.back().truncated);
  CHECK_FALSE(traj.transitions.back().terminated);
}

TEST_CASE("clones continue mid-episode identically") {
  KeyDoorGridEnv env(KeyDoorGridEnv::Layout::compact4(10));
  env.reset(0);
  env.step(ActionId{KeyDoorGridEnv::kRight});
  auto copy = env.clone();
  CHECK(copy->state() == env.state());
  CHECK(copy->steps_taken() == 1);
  const Transition a = env.step(ActionId{KeyDoorGridEnv::kPickup});
  const Transition b = copy->step(ActionId{KeyDoorGridEnv::kPickup});
  CHECK(a.next_state == b.next_state);
  CHECK(a.extrinsic_reward == b.extrinsic_reward);
}
