#pragma once

#include <nlohmann/json.hpp>

#include "pbim/stats.hpp"
#include "pbim/verifier.hpp"

namespace pbim {

// Action sequences are written as arrays of integer action indices.
nlohmann::json to_json(const VerifierReport& report);
nlohmann::json to_json(const StatsResult& result);

}  // namespace pbim
