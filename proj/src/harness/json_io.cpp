#include "pbim/json_io.hpp"

#include <cmath>
#include <string>

namespace pbim {

nlohmann::json to_json(const VerifierReport& report) {
  nlohmann::json j;
  j["optimal_set_base"] = report.optimal_set_base;
  j["optimal_set_shaped"] = report.optimal_set_shaped;
  j["preserved"] = report.preserved;
  j["max_return_base"] = report.max_return_base;
  j["max_return_shaped"] = report.max_return_shaped;
  j["witness"] = report.witness ? nlohmann::json(*report.witness) : nlohmann::json(nullptr);
  j["sequences_evaluated"] = report.sequences_evaluated;
  return j;
}

nlohmann::json to_json(const StatsResult& r) {
  auto real = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(std::to_string(v)); };
  return {
      {"t_statistic", real(r.t_statistic)},
      {"degrees_of_freedom", real(r.degrees_of_freedom)},
      {"p_one_sided", r.p_one_sided},
      {"mean_a", r.mean_a},
      {"mean_b", r.mean_b},
      {"std_a", r.std_a},
      {"std_b", r.std_b},
      {"n_a", r.n_a},
      {"n_b", r.n_b},
      {"exact_tie", r.exact_tie},
  };
}

}  // namespace pbim
