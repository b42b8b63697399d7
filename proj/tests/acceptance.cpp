// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// gating criterion fails. Criterion 6 is reported but never gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pbim/agents.hpp"
#include "pbim/config.hpp"
#include "pbim/envs.hpp"
#include "pbim/experiment.hpp"
#include "pbim/shaping.hpp"
#include "pbim/stats.hpp"
#include "pbim/verifier.hpp"
#include "support/gradcheck.hpp"
#include "support/zero_sum.hpp"

using namespace pbim;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("[%d] %s  %s | %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void advisory(int id, bool holds, const std::string& title, const std::string& detail) {
  std::printf("[%d] %s  %s | %s\n", id, holds ? "PASS (advisory)" : "MISS (advisory)", title.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string list(const std::vector<double>& xs, const char* f = "%.1f") {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + fmt(f, xs[i]);
  return out + "]";
}

// Per-seed mean of extrinsic return over the last `window` episodes.
std::vector<double> final_means(const ExperimentResult& r, std::size_t episodes, std::size_t window) {
  std::vector<double> out;
  for (std::size_t i = 0; i < r.seeds.size(); ++i) {
    double sum = 0.0;
    for (std::size_t e = episodes - window; e < episodes; ++e) sum += r.records[i * episodes + e].extrinsic_return;
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

std::size_t count_if(const std::vector<double>& xs, auto pred) {
  return static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), pred));
}

ExperimentConfig cliff_config(const std::filesystem::path& dir, const std::string& id, ShapingMode shaping,
                              ImKind im) {
  ExperimentConfig c;
  c.env.name = "cliff";
  c.shaping = shaping;
  c.im.kind = im;
  c.im.rnd.lr = 1e-6;
  c.im.rnd.scale = 1000.0;
  c.agent.gamma = 0.99;
  c.agent.episodes = 4000;
  c.agent.epsilon = {1.0, 4e-4, 0.1};
  c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  c.output_dir = dir;
  c.run_id = id;
  return c;
}

void criterion_zero_sum() {
  const auto start = Clock::now();
  const auto naive = testing::zero_sum_property(ShapingMode::pbim_naive, 1000, 2024);
  const auto norm = testing::zero_sum_property(ShapingMode::pbim_normalized, 1000, 2025);
  const double secs = seconds_since(start);
  const bool pass = naive.violations == 0 && norm.violations == 0 && secs < 1.0;
  report(1, pass, "zero-sum shaped return",
         "naive violations " + std::to_string(naive.violations) + "/1000 (worst " +
             fmt("%.2e", naive.worst_ratio) + "), normalized violations " + std::to_string(norm.violations) +
             "/1000 (worst " + fmt("%.2e", norm.worst_ratio) + "), tol 1e-9, " + fmt("%.3f", secs) + " s < 1 s");
}

void criterion_optimality_oracle() {
  const auto start = Clock::now();
  std::size_t instances = 0, naive_ok = 0, norm_ok = 0;
  std::string raw_breaks;
  bool every_alpha_breaks = true;
  for (double alpha : {0.1, 0.5, 1.0}) {
    std::size_t breaks = 0;
    for (std::size_t length : {1u, 2u, 3u}) {
      for (std::size_t horizon : {3u, 4u, 5u, 6u}) {
        const ChainMDPEnv env(length, horizon);
        for (double gamma : {0.9, 0.99}) {
          VerifyRequest req;
          req.env = &env;
          req.im.kind = ImKind::count;
          req.im.alpha = alpha;
          req.gamma = gamma;
          ++instances;
          req.mode = ShapingMode::pbim_naive;
          naive_ok += verify_optimality(req).preserved;
          req.mode = ShapingMode::pbim_normalized;
          req.fixed_mean = alpha / 2;
          norm_ok += verify_optimality(req).preserved;
          req.mode = ShapingMode::raw;
          breaks += !verify_optimality(req).preserved;
        }
      }
    }
    every_alpha_breaks = every_alpha_breaks && breaks >= 1;
    raw_breaks += (raw_breaks.empty() ? "" : ", ") + fmt("alpha=%.1f: ", alpha) + std::to_string(breaks);
  }
  const double secs = seconds_since(start);
  const bool pass = naive_ok == instances && norm_ok == instances && every_alpha_breaks && secs < 10.0;
  report(2, pass, "optimal-policy preservation on chains",
         "pbim preserved " + std::to_string(naive_ok) + "/" + std::to_string(instances) + ", pbim_norm preserved " +
             std::to_string(norm_ok) + "/" + std::to_string(instances) + ", raw not preserved {" + raw_breaks +
             "}, " + fmt("%.2f", secs) + " s < 10 s");
}

void criterion_procrastination() {
  const bool a = check_procrastination(0.025, 0.995, 1, 1);
  const bool b = check_procrastination(0.02, 0.995, 1, 1);
  const bool below = check_procrastination(0.005, 0.995, 1, 1);
  report(3, a && b, "stalling condition",
         std::string("n=1 t=1 gamma=0.995: alpha=0.025 -> ") + (a ? "true" : "false") + ", alpha=0.02 -> " +
             (b ? "true" : "false") + " (alpha=0.005 -> " + (below ? "true" : "false") + ")");
}

struct CliffRuns {
  ExperimentResult none, raw, norm;
};

void criterion_cliff(const CliffRuns& runs) {
  const auto none = final_means(runs.none, 4000, 100);
  const auto raw = final_means(runs.raw, 4000, 100);
  const auto norm = final_means(runs.norm, 4000, 100);
  const auto high = [](double v) { return v >= 80.0; };
  const auto negative = [](double v) { return v < 0.0; };

  const bool a = count_if(none, high) >= 8 && count_if(norm, high) >= 8;
  const bool b = count_if(raw, negative) >= 8;
  const auto none_vs_norm = welch_t_test(none, norm, Alternative::a_greater);
  const auto norm_vs_none = welch_t_test(none, norm, Alternative::b_greater);
  const auto none_vs_raw = welch_t_test(none, raw, Alternative::a_greater);
  const bool c = none_vs_norm.p_one_sided > 0.05 && norm_vs_none.p_one_sided > 0.05 && none_vs_raw.p_one_sided < 0.05;

  std::printf("    final-100 means  no-IM %s\n", list(none).c_str());
  std::printf("                     raw RND %s\n", list(raw).c_str());
  std::printf("                     pbim_norm RND %s\n", list(norm).c_str());
  report(4, a && b && c, "cliff walking reproduction",
         std::string("(a) >=80 in >=8/10: no-IM ") + std::to_string(count_if(none, high)) + "/10, pbim_norm " +
             std::to_string(count_if(norm, high)) + "/10 -> " + (a ? "ok" : "miss") + "; (b) raw <0: " +
             std::to_string(count_if(raw, negative)) + "/10 -> " + (b ? "ok" : "miss") +
             "; (c) p(no-IM>norm)=" + fmt("%.3g", none_vs_norm.p_one_sided) + " p(norm>no-IM)=" +
             fmt("%.3g", norm_vs_none.p_one_sided) + " p(no-IM>raw)=" + fmt("%.3g", none_vs_raw.p_one_sided) +
             " -> " + (c ? "ok" : "miss"));
}

void criterion_critical_path(const CliffRuns& runs) {
  const CliffWalkingEnv env;
  const double optimum = value_iteration_optimal(env, 1.0, env.max_steps()).optimal_return;
  auto tally = [&](const ExperimentResult& r, std::size_t& optimal, std::size_t& goal) {
    optimal = goal = 0;
    for (const auto& s : r.seeds) {
      CliffWalkingEnv e;
      const auto g = run_greedy(e, s.final_q, s.seed);
      goal += g.reached_goal;
      optimal += g.reached_goal && g.extrinsic_return == optimum;
    }
  };
  std::size_t none_opt, none_goal, norm_opt, norm_goal, raw_opt, raw_goal;
  tally(runs.none, none_opt, none_goal);
  tally(runs.norm, norm_opt, norm_goal);
  tally(runs.raw, raw_opt, raw_goal);
  const std::size_t seeds = runs.none.seeds.size();
  const auto majority = [&](std::size_t k) { return 2 * k > seeds; };
  const bool pass = majority(none_opt) && majority(norm_opt) && majority(seeds - raw_goal);
  report(5, pass, "greedy critical path",
         "optimum " + fmt("%.0f", optimum) + "; greedy return == optimum: no-IM " + std::to_string(none_opt) + "/" +
             std::to_string(seeds) + ", pbim_norm " + std::to_string(norm_opt) + "/" + std::to_string(seeds) +
             "; raw RND reaches goal " + std::to_string(raw_goal) + "/" + std::to_string(seeds));
}

void criterion_long_cliff(const std::filesystem::path& dir) {
  auto config = [&](const std::string& id, ShapingMode shaping, ImKind im) {
    auto c = cliff_config(dir, id, shaping, im);
    c.env.name = "cliff_long";
    c.agent.episodes = 10000;
    c.agent.epsilon = {1.0, 5e-4, 0.1};
    return c;
  };
  const auto none = run_experiment(config("long_none", ShapingMode::none, ImKind::none));
  const auto norm = run_experiment(config("long_pbim_norm_rnd", ShapingMode::pbim_normalized, ImKind::rnd));
  const auto a = final_means(none, 10000, 1000);
  const auto b = final_means(norm, 10000, 1000);
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
  const auto test = welch_t_test(b, a, Alternative::a_greater);
  advisory(6, mean_b >= mean_a, "long cliff walking",
           "final-1000 mean pbim_norm " + fmt("%.2f", mean_b) + " vs no-IM " + fmt("%.2f", mean_a) +
               ", Welch p(norm>no-IM)=" + fmt("%.3g", test.p_one_sided));
}

void criterion_gradient() {
  double worst = 0.0;
  constexpr int kDraws = 16;
  for (int i = 0; i < kDraws; ++i) worst = std::max(worst, testing::gradient_check_max_rel_error(1000 + i));
  report(7, worst < 1e-4, "network gradient vs central differences",
         std::to_string(kDraws) + " draws, eps 1e-5, max relative error " + fmt("%.2e", worst) + " < 1e-4");
}

struct WelchCase {
  std::vector<double> a, b;
  Alternative alt;
  double t, p;
};

void criterion_welch() {
  const std::vector<WelchCase> table = {
#include "oracles/welch_table.inc"
  };
  double worst = 0.0;
  for (const auto& c : table) worst = std::max(worst, std::fabs(welch_t_test(c.a, c.b, c.alt).p_one_sided - c.p));
  report(8, table.size() >= 20 && worst <= 1e-3, "Welch test against reference table",
         std::to_string(table.size()) + " cases, max |p - p_ref| " + fmt("%.2e", worst) + " <= 1e-3");
}

std::string body_without_wall_clock(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::string line, body;
  std::getline(f, line);
  while (std::getline(f, line)) body += line.substr(0, line.rfind(',')) + '\n';
  return body;
}

void criterion_determinism(const std::filesystem::path& dir) {
  auto c = cliff_config(dir / "first", "determinism", ShapingMode::pbim_normalized, ImKind::rnd);
  c.agent.episodes = 300;
  c.seeds = {11, 12, 13};
  const auto first = run_experiment(c, 1);
  c.output_dir = dir / "second";
  const auto second = run_experiment(c, 3);
  const std::string a = body_without_wall_clock(first.csv_path);
  const std::string b = body_without_wall_clock(second.csv_path);
  report(9, !a.empty() && a == b, "deterministic CSV output",
         std::to_string(first.records.size()) + " rows, bodies excluding wall_ms " +
             (a == b ? "byte-identical" : "differ") + " (jobs 1 vs 3)");
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "pbim_acceptance";
  std::filesystem::create_directories(dir);

  criterion_zero_sum();
  criterion_optimality_oracle();
  criterion_procrastination();

  CliffRuns runs{run_experiment(cliff_config(dir, "cliff_none", ShapingMode::none, ImKind::none)),
                 run_experiment(cliff_config(dir, "cliff_raw_rnd", ShapingMode::raw, ImKind::rnd)),
                 run_experiment(cliff_config(dir, "cliff_pbim_norm_rnd", ShapingMode::pbim_normalized, ImKind::rnd))};
  criterion_cliff(runs);
  criterion_critical_path(runs);
  criterion_long_cliff(dir);
  criterion_gradient();
  criterion_welch();
  criterion_determinism(dir);

  std::printf("%d gating criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
