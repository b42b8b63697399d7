#include <doctest.h>

#include <algorithm>

#include "pbim/envs.hpp"
#include "pbim/errors.hpp"
#include "pbim/verifier.hpp"

using namespace pbim;

namespace {

VerifyRequest count_request(const Environment& env, double alpha, double gamma, ShapingMode mode) {
  VerifyRequest req;
  req.env = &env;
  req.im.kind = ImKind::count;
  req.im.alpha = alpha;
  req.gamma = gamma;
  req.mode = mode;
  return req;
}

}  // namespace

TEST_CASE("raw count bonus on the chain rewards stalling") {
  ChainMDPEnv env(2, 4);
  const auto report = verify_optimality(count_request(env, 0.5, 0.9, ShapingMode::raw));
  CHECK_FALSE(report.preserved);
  REQUIRE(report.witness.has_value());
  CHECK(report.optimal_set_base == std::vector<ActionSequence>{{0, 0}});
  REQUIRE(report.optimal_set_shaped.size() == 1);
  const auto& best = report.optimal_set_shaped.front();
  CHECK(std::count(best.begin(), best.end(), ChainMDPEnv::kStall) > 0);
  CHECK(report.max_return_base == doctest::Approx(0.9));
  CHECK(report.sequences_evaluated == 11);
}

TEST_CASE("pbim conversions keep the chain optimum") {
  ChainMDPEnv env(2, 4);
  for (auto mode : {ShapingMode::pbim_naive, ShapingMode::pbim_normalized}) {
    const auto report = verify_optimality(count_request(env, 0.5, 0.9, mode));
    CHECK(report.preserved);
    CHECK_FALSE(report.witness.has_value());
    CHECK(report.max_return_shaped == doctest::Approx(report.max_return_base).epsilon(1e-9));
  }
}

TEST_CASE("zero coefficient leaves returns unchanged") {
  ChainMDPEnv env(3, 5);
  for (auto mode : {ShapingMode::raw, ShapingMode::pbim_naive, ShapingMode::pbim_normalized}) {
    const auto report = verify_optimality(count_request(env, 0.0, 0.99, mode));
    CHECK(report.preserved);
    CHECK(report.max_return_shaped == report.max_return_base);
  }
}

TEST_CASE("shaped return of a sequence") {
  ChainMDPEnv env(1, 3);
  const auto req = count_request(env, 1.0, 0.5, ShapingMode::raw);
  // stall (revisit start: 1/2), advance (new state: 1), goal reward 1 at t=1.
  const std::vector<ActionId> seq{ActionId{1}, ActionId{0}};
  const auto r = evaluate_sequence(req, seq);
  CHECK(r.base == doctest::Approx(0.5));
  CHECK(r.shaped == doctest::Approx(0.5 + 0.5 + 0.5 * 1.0));
}

TEST_CASE("verifier matrix on chains and the compact key-door room") {
  std::vector<std::unique_ptr<Environment>> envs;
  for (std::size_t length : {1u, 2u, 3u})
    for (std::size_t horizon : {3u, 4u, 5u, 6u}) envs.push_back(std::make_unique<ChainMDPEnv>(length, horizon));
  envs.push_back(std::make_unique<KeyDoorGridEnv>(KeyDoorGridEnv::Layout::compact4()));

  for (double alpha : {0.1, 0.5, 1.0}) {
    std::size_t raw_breaks = 0;
    for (const auto& env : envs) {
      for (double gamma : {0.9, 0.99}) {
        CAPTURE(alpha);
        CAPTURE(gamma);
        CAPTURE(env->name());
        CHECK(verify_optimality(count_request(*env, alpha, gamma, ShapingMode::pbim_naive)).preserved);
        auto norm = count_request(*env, alpha, gamma, ShapingMode::pbim_normalized);
        norm.fixed_mean = alpha / 2;
        CHECK(verify_optimality(norm).preserved);
        if (!verify_optimality(count_request(*env, alpha, gamma, ShapingMode::raw)).preserved) ++raw_breaks;
      }
    }
    CAPTURE(alpha);
    CHECK(raw_breaks >= 1);
  }
}

TEST_CASE("verifier rejects oversize spaces") {
  CliffWalkingEnv env;
  CHECK_THROWS_AS(verify_optimality(count_request(env, 0.1, 0.9, ShapingMode::raw)), SizeError);
}
