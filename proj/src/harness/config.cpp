#include "pbim/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "pbim/errors.hpp"

namespace pbim {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(ExperimentConfig&, const json&)>;

template <typename T>
T as(const std::string& key, const json& v) {
  try {
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(key, "expected a non-negative integer, got " + v.dump());
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(key, "expected a number, got " + v.dump());
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(key, "expected a string, got " + v.dump());
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"env", [](auto& c, const json& v) { c.env.name = as<std::string>("env", v); }},
      {"env.name", [](auto& c, const json& v) { c.env.name = as<std::string>("env.name", v); }},
      {"env.width", [](auto& c, const json& v) { c.env.width = as<std::size_t>("env.width", v); }},
      {"env.height", [](auto& c, const json& v) { c.env.height = as<std::size_t>("env.height", v); }},
      {"env.max_steps",
       [](auto& c, const json& v) { c.env.max_steps = as<std::size_t>("env.max_steps", v); }},
      {"env.length", [](auto& c, const json& v) { c.env.length = as<std::size_t>("env.length", v); }},
      {"env.goal_reward",
       [](auto& c, const json& v) { c.env.goal_reward = as<double>("env.goal_reward", v); }},
      {"shaping",
       [](auto& c, const json& v) { c.shaping = parse_shaping_mode(as<std::string>("shaping", v)); }},
      {"im", [](auto& c, const json& v) { c.im.kind = parse_im_kind(as<std::string>("im", v)); }},
      {"alpha", [](auto& c, const json& v) { c.im.alpha = as<double>("alpha", v); }},
      {"rnd.lr", [](auto& c, const json& v) { c.im.rnd.lr = as<double>("rnd.lr", v); }},
      {"rnd.scale", [](auto& c, const json& v) { c.im.rnd.scale = as<double>("rnd.scale", v); }},
      {"rnd.hidden", [](auto& c, const json& v) { c.im.rnd.hidden = as<std::size_t>("rnd.hidden", v); }},
      {"rnd.hidden_layers",
       [](auto& c, const json& v) { c.im.rnd.hidden_layers = as<std::size_t>("rnd.hidden_layers", v); }},
      {"rnd.out_dim",
       [](auto& c, const json& v) { c.im.rnd.out_dim = as<std::size_t>("rnd.out_dim", v); }},
      {"rnd.init",
       [](auto& c, const json& v) { c.im.rnd.init = parse_net_init(as<std::string>("rnd.init", v)); }},
      {"rnd.seed", [](auto& c, const json& v) { c.im.rnd.seed = as<std::uint64_t>("rnd.seed", v); }},
      {"agent.lr", [](auto& c, const json& v) { c.agent.lr = as<double>("agent.lr", v); }},
      {"agent.gamma", [](auto& c, const json& v) { c.agent.gamma = as<double>("agent.gamma", v); }},
      {"agent.episodes",
       [](auto& c, const json& v) { c.agent.episodes = as<std::size_t>("agent.episodes", v); }},
      {"agent.eps_start",
       [](auto& c, const json& v) { c.agent.epsilon.start = as<double>("agent.eps_start", v); }},
      {"agent.eps_dec",
       [](auto& c, const json& v) {
         c.agent.epsilon.decrement_per_episode = as<double>("agent.eps_dec", v);
       }},
      {"agent.eps_floor",
       [](auto& c, const json& v) { c.agent.epsilon.floor = as<double>("agent.eps_floor", v); }},
      {"seeds",
       [](auto& c, const json& v) {
         if (!v.is_array()) throw ConfigError("seeds", "expected an array of integers");
         c.seeds.clear();
         for (const auto& s : v) c.seeds.push_back(as<std::uint64_t>("seeds", s));
       }},
      {"output_dir",
       [](auto& c, const json& v) { c.output_dir = as<std::string>("output_dir", v); }},
      {"run_id", [](auto& c, const json& v) { c.run_id = as<std::string>("run_id", v); }},
      {"epoch_size",
       [](auto& c, const json& v) { c.epoch_size = as<std::size_t>("epoch_size", v); }},
      {"overflow_threshold",
       [](auto& c, const json& v) { c.overflow_threshold = as<double>("overflow_threshold", v); }},
  };
  return table;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out.emplace_back(prefix, j);
  }
}

}  // namespace

void apply_setting(ExperimentConfig& config, const std::string& key, const json& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(key, "unknown configuration key");
  it->second(config, value);
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  std::vector<std::pair<std::string, json>> flat;
  flatten(j, "", flat);
  ExperimentConfig config;
  for (const auto& [k, v] : flat) apply_setting(config, k, v);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError(std::string(assignment), "override must look like key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  apply_setting(config, key, value);
}

void ExperimentConfig::validate() const {
  make_environment(env);  // throws on unknown names or bad geometry
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  if (agent.episodes == 0) throw ConfigError("agent.episodes", "must be positive");
  if (!(agent.lr >= 0.0 && agent.lr <= 1.0)) throw ConfigError("agent.lr", "must lie in [0, 1]");
  if (!(agent.gamma > 0.0 && agent.gamma <= 1.0))
    throw ConfigError("agent.gamma", "must lie in (0, 1]");
  const auto& e = agent.epsilon;
  if (!(e.start >= 0.0 && e.start <= 1.0)) throw ConfigError("agent.eps_start", "must lie in [0, 1]");
  if (!(e.floor >= 0.0 && e.floor <= 1.0)) throw ConfigError("agent.eps_floor", "must lie in [0, 1]");
  if (e.decrement_per_episode < 0.0) throw ConfigError("agent.eps_dec", "must be non-negative");
  if (im.alpha < 0.0) throw ConfigError("alpha", "must be non-negative");
  if (im.rnd.lr < 0.0) throw ConfigError("rnd.lr", "must be non-negative");
  if (im.rnd.hidden == 0) throw ConfigError("rnd.hidden", "must be positive");
  if (im.rnd.out_dim == 0) throw ConfigError("rnd.out_dim", "must be positive");
  if (epoch_size == 0) throw ConfigError("epoch_size", "must be positive");
  if (run_id.empty() || run_id.find('/') != std::string::npos)
    throw ConfigError("run_id", "must be a non-empty file name");
  if ((shaping == ShapingMode::raw || shaping == ShapingMode::pbim_naive ||
       shaping == ShapingMode::pbim_normalized || shaping == ShapingMode::potential) &&
      im.kind == ImKind::none)
    throw ConfigError("im", "shaping mode '" + to_string(shaping) + "' needs an intrinsic reward");
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  json j;
  j["env"] = c.env.name;
  if (c.env.width) j["env.width"] = *c.env.width;
  if (c.env.height) j["env.height"] = *c.env.height;
  if (c.env.max_steps) j["env.max_steps"] = *c.env.max_steps;
  if (c.env.length) j["env.length"] = *c.env.length;
  if (c.env.goal_reward) j["env.goal_reward"] = *c.env.goal_reward;
  j["shaping"] = to_string(c.shaping);
  j["im"] = to_string(c.im.kind);
  j["alpha"] = c.im.alpha;
  j["rnd.lr"] = c.im.rnd.lr;
  j["rnd.scale"] = c.im.rnd.scale;
  j["rnd.hidden"] = c.im.rnd.hidden;
  j["rnd.hidden_layers"] = c.im.rnd.hidden_layers;
  j["rnd.out_dim"] = c.im.rnd.out_dim;
  j["rnd.seed"] = c.im.rnd.seed;
  j["rnd.init"] = std::string(to_string(c.im.rnd.init));
  j["agent.lr"] = c.agent.lr;
  j["agent.gamma"] = c.agent.gamma;
  j["agent.episodes"] = c.agent.episodes;
  j["agent.eps_start"] = c.agent.epsilon.start;
  j["agent.eps_dec"] = c.agent.epsilon.decrement_per_episode;
  j["agent.eps_floor"] = c.agent.epsilon.floor;
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir.string();
  j["run_id"] = c.run_id;
  j["epoch_size"] = c.epoch_size;
  j["overflow_threshold"] = c.overflow_threshold;
  return j;
}

}  // namespace pbim
