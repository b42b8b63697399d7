#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pbim/intrinsic.hpp"
#include "pbim/mdp.hpp"
#include "pbim/shaping.hpp"

namespace pbim {

struct VerifyRequest {
  const Environment* env = nullptr;  // prototype; cloned per sequence
  IntrinsicSpec im{};
  ShapingMode mode = ShapingMode::pbim_naive;
  double gamma = 0.99;
  std::size_t budget = 1'000'000;
  double fixed_mean = 0.0;  // frozen mean handed to the normalized converter
  double tie_tolerance = 1e-9;
};

using ActionSequence = std::vector<std::size_t>;

struct VerifierReport {
  std::vector<ActionSequence> optimal_set_base;
  std::vector<ActionSequence> optimal_set_shaped;
  bool preserved = false;
  double max_return_base = 0.0;
  double max_return_shaped = 0.0;
  std::optional<ActionSequence> witness;  // set when not preserved
  std::size_t sequences_evaluated = 0;
};

struct SequenceReturns {
  double base = 0.0;    // discounted extrinsic return
  double shaped = 0.0;  // discounted extrinsic + shaped intrinsic return
};

/// Replays one action sequence from reset with a fresh intrinsic generator
/// and converter.
SequenceReturns evaluate_sequence(const VerifyRequest& req, std::span<const ActionId> actions);

/// Exhaustive check that the shaping leaves the set of return-maximising
/// action sequences unchanged. Every admissible sequence over the
/// environment's full horizon is replayed; argmax sets are taken with an
/// absolute tie tolerance. Rejects stochastic environments with
/// std::domain_error and oversized searches with SizeError.
VerifierReport verify_optimality(const VerifyRequest& req);

}  // namespace pbim
