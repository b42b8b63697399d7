#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pbim/agents.hpp"
#include "pbim/envs.hpp"
#include "pbim/intrinsic.hpp"
#include "pbim/shaping.hpp"

namespace pbim {

struct AgentSpec {
  double lr = 0.1;
  double gamma = 0.99;
  std::size_t episodes = 4000;
  EpsilonSchedule epsilon{};
};

struct ExperimentConfig {
  EnvSpec env{};
  ShapingMode shaping = ShapingMode::none;
  IntrinsicSpec im{};
  AgentSpec agent{};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::filesystem::path output_dir = "runs";
  std::string run_id = "run";
  std::size_t epoch_size = 1;  // episodes between mean-tracker refreshes
  double overflow_threshold = 1e12;

  /// Throws ConfigError naming the first offending key.
  void validate() const;
  std::filesystem::path csv_path() const { return output_dir / (run_id + ".csv"); }
};

/// Accepts nested objects ({"agent": {"lr": 0.1}}) and flat dotted keys
/// ({"agent.lr": 0.1}) interchangeably. Unknown keys raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override. The value is parsed as JSON when
/// possible and taken as a bare string otherwise.
void apply_override(ExperimentConfig& config, std::string_view assignment);
void apply_setting(ExperimentConfig& config, const std::string& key, const nlohmann::json& value);

nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace pbim
