// Command-line front end: run, verify, stats, plot.

#include <algorithm>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbim/config.hpp"
#include "pbim/envs.hpp"
#include "pbim/errors.hpp"
#include "pbim/experiment.hpp"
#include "pbim/json_io.hpp"
#include "pbim/plot.hpp"
#include "pbim/stats.hpp"
#include "pbim/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRange = 3;

struct RunArgs {
  std::string config;
  std::vector<std::string> overrides;
  unsigned jobs = 1;
  bool strict = false;
};

struct VerifyArgs {
  std::string env = "chain";
  std::string im = "count";
  std::string shaping = "pbim";
  double alpha = 0.5;
  double gamma = 0.9;
  double mean = 0.0;
  std::size_t budget = 1'000'000;
  std::optional<std::size_t> length;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> width;
  std::optional<std::size_t> height;
};

struct StatsArgs {
  std::vector<std::string> csv;
  std::string column = "extrinsic_return";
  std::string alt = "a_greater";
  std::size_t last = 100;
};

struct PlotArgs {
  std::vector<std::string> csv;
  std::string column = "extrinsic_return";
  std::size_t window = 100;
  std::string out = "plot.svg";
};

int cmd_run(const RunArgs& args) {
  pbim::ExperimentConfig config =
      args.config.empty() ? pbim::ExperimentConfig{} : pbim::load_config(args.config);
  for (const auto& o : args.overrides) pbim::apply_override(config, o);
  config.validate();

  const auto result = pbim::run_experiment(config, args.jobs);

  nlohmann::json summary;
  summary["csv"] = result.csv_path.string();
  summary["rows"] = result.records.size();
  summary["range_warnings"] = result.range_warnings;
  const std::size_t window = std::min<std::size_t>(100, config.agent.episodes);
  std::vector<double> finals;
  for (std::size_t i = 0; i < result.seeds.size(); ++i) {
    const auto* first = result.records.data() + (i + 1) * config.agent.episodes - window;
    double sum = 0.0;
    for (std::size_t k = 0; k < window; ++k) sum += first[k].extrinsic_return;
    finals.push_back(sum / static_cast<double>(window));
  }
  summary["final_mean_extrinsic_return"] = finals;
  std::cout << summary.dump(2) << '\n';

  if (result.range_warnings > 0) {
    std::cerr << "warning: " << result.range_warnings
              << " shaping corrections exceeded the overflow threshold\n";
    if (args.strict) return kExitRange;
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
  pbim::EnvSpec env_spec;
  env_spec.name = args.env;
  env_spec.length = args.length;
  env_spec.max_steps = args.horizon;
  env_spec.width = args.width;
  env_spec.height = args.height;
  if (args.env == "keydoor" && !args.width && !args.height) {
    env_spec.width = 4;
    env_spec.height = 4;
    if (!args.horizon) env_spec.max_steps = 6;
  }
  const auto env = pbim::make_environment(env_spec);

  pbim::VerifyRequest req;
  req.env = env.get();
  req.im.kind = pbim::parse_im_kind(args.im);
  req.im.alpha = args.alpha;
  req.mode = pbim::parse_shaping_mode(args.shaping);
  req.gamma = args.gamma;
  req.budget = args.budget;
  req.fixed_mean = args.mean;
  std::cout << pbim::to_json(pbim::verify_optimality(req)).dump(2) << '\n';
  return kExitOk;
}

int cmd_stats(const StatsArgs& args) {
  if (args.csv.size() != 2) throw pbim::ConfigError("csv", "stats needs exactly two --csv files");
  std::vector<std::vector<double>> samples;
  for (const auto& path : args.csv) {
    const auto per_seed = pbim::per_seed_column(pbim::read_csv(path), args.column);
    std::vector<double> sample;
    for (const auto& s : per_seed) {
      const std::size_t k = std::min(args.last, s.size());
      sample.push_back(std::accumulate(s.end() - static_cast<long>(k), s.end(), 0.0) /
                       static_cast<double>(k));
    }
    samples.push_back(std::move(sample));
  }
  const auto r = pbim::welch_t_test(samples[0], samples[1], pbim::parse_alternative(args.alt));
  auto j = pbim::to_json(r);
  j["column"] = args.column;
  j["alternative"] = args.alt;
  j["last_episodes"] = args.last;
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_plot(const PlotArgs& args) {
  std::vector<std::filesystem::path> paths(args.csv.begin(), args.csv.end());
  pbim::emit_plot(paths, args.column, args.out, args.window);
  std::cout << args.out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potential-based intrinsic motivation laboratory"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Train tabular agents over seeds and write a run CSV");
  run_cmd->add_option("--config", run.config, "JSON config file");
  run_cmd->add_option("--set", run.overrides, "Override a config key (key=value)")->allow_extra_args(false);
  run_cmd->add_option("--jobs", run.jobs, "Seeds trained in parallel")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--strict", run.strict, "Exit with code 3 on shaping range warnings");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Brute-force optimal-policy preservation check");
  verify_cmd->add_option("--env", verify.env, "chain or keydoor (cliff is too large to enumerate)");
  verify_cmd->add_option("--im", verify.im, "Intrinsic reward: none, count or rnd");
  verify_cmd->add_option("--alpha", verify.alpha, "Count bonus coefficient");
  verify_cmd->add_option("--gamma", verify.gamma, "Discount factor");
  verify_cmd->add_option("--shaping", verify.shaping, "none, raw, pbim, pbim_norm or potential");
  verify_cmd->add_option("--budget", verify.budget, "Maximum number of action sequences");
  verify_cmd->add_option("--mean", verify.mean, "Frozen mean for pbim_norm");
  verify_cmd->add_option("--length", verify.length, "Chain length");
  verify_cmd->add_option("--horizon", verify.horizon, "Episode step cap");
  verify_cmd->add_option("--width", verify.width, "Grid width");
  verify_cmd->add_option("--height", verify.height, "Grid height");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "One-sided Welch t-test between two run CSVs");
  stats_cmd->add_option("--csv", stats.csv, "Run CSV (give twice)")->required();
  stats_cmd->add_option("--column", stats.column, "Column to compare");
  stats_cmd->add_option("--alt", stats.alt, "a_greater or b_greater");
  stats_cmd->add_option("--last", stats.last, "Per-seed mean over the last K episodes")
      ->check(CLI::PositiveNumber);

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG line chart of a run column");
  plot_cmd->add_option("--csv", plot.csv, "Run CSV, one series each")->required();
  plot_cmd->add_option("--column", plot.column, "Column to plot");
  plot_cmd->add_option("--window", plot.window, "Moving-average window")->check(CLI::PositiveNumber);
  plot_cmd->add_option("--out", plot.out, "Output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(verify);
    if (*stats_cmd) return cmd_stats(stats);
    if (*plot_cmd) return cmd_plot(plot);
  } catch (const pbim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
