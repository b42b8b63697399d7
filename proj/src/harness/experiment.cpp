#include "pbim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pbim/errors.hpp"

namespace pbim {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv_row(const RunRecord& r) {
  std::string row;
  row.reserve(128);
  row += r.run_id;
  row += ',' + std::to_string(r.seed);
  row += ',' + std::to_string(r.episode);
  row += ',' + std::to_string(r.steps);
  row += ',' + format_real(r.extrinsic_return);
  row += ',' + format_real(r.raw_intrinsic_return);
  row += ',' + format_real(r.shaped_intrinsic_return);
  row += ',' + format_real(r.epsilon);
  char ms[32];
  std::snprintf(ms, sizeof(ms), "%.3f", r.wall_ms);
  row += ',';
  row += ms;
  return row;
}

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over the combined value
  std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Receives completed records from any worker and writes them in seed order.
class OrderedCsvWriter {
 public:
  OrderedCsvWriter(const std::filesystem::path& path, std::size_t runs, std::size_t per_run)
      : out_(path, std::ios::binary | std::ios::trunc), pending_(runs), per_run_(per_run) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << kRunCsvHeader << '\n';
    out_.flush();
  }

  void submit(std::size_t run, const RunRecord& r) {
    std::lock_guard lock(mu_);
    if (run == current_) {
      write(r);
      drain();
    } else {
      pending_[run].push_back(r);
    }
  }

 private:
  void write(const RunRecord& r) {
    out_ << to_csv_row(r) << '\n';
    out_.flush();
    if (++written_in_current_ == per_run_) {
      ++current_;
      written_in_current_ = 0;
    }
  }

  void drain() {
    while (current_ < pending_.size() && !pending_[current_].empty()) {
      auto batch = std::move(pending_[current_]);
      pending_[current_].clear();
      const std::size_t run = current_;
      for (const auto& r : batch) write(r);
      if (current_ == run) break;  // run still in progress
    }
  }

  std::mutex mu_;
  std::ofstream out_;
  std::vector<std::vector<RunRecord>> pending_;
  std::size_t per_run_;
  std::size_t current_ = 0;
  std::size_t written_in_current_ = 0;
};

SeedOutcome train_seed_impl(const ExperimentConfig& config, std::uint64_t seed,
                            const std::function<void(const RunRecord&)>& emit) {
  auto env = make_environment(config.env);
  IntrinsicSpec im_spec = config.im;
  im_spec.rnd.seed = mix_seed(config.im.rnd.seed, seed);
  auto im = make_intrinsic(im_spec, env->state_count());

  MeanTracker tracker;
  ShapingConverter conv(config.shaping, config.agent.gamma, &tracker, config.overflow_threshold);
  QTable q(env->state_count(), env->action_count(), config.agent.lr, config.agent.gamma);
  std::mt19937_64 rng(mix_seed(seed, 0xA6E47));

  for (std::size_t ep = 0; ep < config.agent.episodes; ++ep) {
    const auto t0 = std::chrono::steady_clock::now();
    const double epsilon = config.agent.epsilon.at(ep);
    RunRecord rec;
    rec.run_id = config.run_id;
    rec.seed = seed;
    rec.episode = ep;
    rec.epsilon = epsilon;

    StateId s = env->reset(mix_seed(seed, ep));
    im->begin_episode(*env, s);
    conv.begin_episode();
    double discount = 1.0;
    while (!env->episode_over()) {
      const ActionId a = epsilon_greedy_act(q, s, epsilon, rng);
      const Transition tr = env->step(a);
      const double raw = im->on_step(*env, tr);
      const double shaped = conv.shape_step(raw, tr.ends_episode());
      q.q_update(tr, tr.extrinsic_reward + shaped);

      rec.extrinsic_return += tr.extrinsic_reward;
      rec.raw_intrinsic_return += raw;
      rec.shaped_intrinsic_return += discount * shaped;
      discount *= config.agent.gamma;
      ++rec.steps;
      s = tr.next_state;
    }
    if ((ep + 1) % config.epoch_size == 0) tracker.refresh();

    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(rec);
  }
  return SeedOutcome{seed, std::move(q), conv.range_warnings()};
}

}  // namespace

SeedOutcome train_seed(const ExperimentConfig& config, std::uint64_t seed,
                       std::vector<RunRecord>& records_out) {
  return train_seed_impl(config, seed, [&](const RunRecord& r) { records_out.push_back(r); });
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + config.output_dir.string() + ": " + ec.message());

  ExperimentResult result;
  result.csv_path = config.csv_path();
  const std::size_t runs = config.seeds.size();
  OrderedCsvWriter writer(result.csv_path, runs, config.agent.episodes);

  std::vector<std::vector<RunRecord>> per_run(runs);
  std::vector<std::optional<SeedOutcome>> outcomes(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      try {
        outcomes[i] = train_seed_impl(config, config.seeds[i], [&](const RunRecord& r) {
          per_run[i].push_back(r);
          writer.submit(i, r);
        });
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(runs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < runs; ++i) {
    result.records.insert(result.records.end(), per_run[i].begin(), per_run[i].end());
    result.range_warnings += outcomes[i]->range_warnings;
    result.seeds.push_back(std::move(*outcomes[i]));
  }
  return result;
}

std::size_t CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::invalid_argument("unknown column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (idx >= row.size()) throw std::invalid_argument("short CSV row");
    double v = 0.0;
    const auto& cell = row[idx];
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
      throw std::invalid_argument("non-numeric value '" + cell + "' in column '" + name + "'");
    out.push_back(v);
  }
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line) || line.empty())
    throw std::invalid_argument(path.string() + " is empty");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split(line));
  }
  if (table.rows.empty()) throw std::invalid_argument(path.string() + " has no data rows");
  return table;
}

std::vector<std::vector<double>> per_seed_column(const CsvTable& table, const std::string& column) {
  const auto values = table.numeric_column(column);
  const auto seed_col = std::find(table.header.begin(), table.header.end(), "seed");
  if (seed_col == table.header.end()) return {values};

  const std::size_t seed_idx = static_cast<std::size_t>(seed_col - table.header.begin());
  std::vector<std::string> order;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& key = table.rows[r].at(seed_idx);
    auto [it, inserted] = slot.emplace(key, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(values[r]);
  }
  return out;
}

}  // namespace pbim
