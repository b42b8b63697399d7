#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pbim/agents.hpp"
#include "pbim/config.hpp"

namespace pbim {

/// One row per training episode.
struct RunRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  std::size_t episode = 0;
  std::size_t steps = 0;
  double extrinsic_return = 0.0;        // undiscounted
  double raw_intrinsic_return = 0.0;    // undiscounted sum of raw bonuses
  double shaped_intrinsic_return = 0.0; // gamma-discounted sum of shaped bonuses
  double epsilon = 0.0;
  double wall_ms = 0.0;
};

inline constexpr const char* kRunCsvHeader =
    "run_id,seed,episode,steps,extrinsic_return,raw_intrinsic_return,shaped_intrinsic_return,"
    "epsilon,wall_ms";

/// Shortest round-trip decimal form; identical inputs give identical text.
std::string format_real(double v);
std::string to_csv_row(const RunRecord& r);

struct SeedOutcome {
  std::uint64_t seed = 0;
  QTable final_q;
  std::size_t range_warnings = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // seed-major, episode order
  std::vector<SeedOutcome> seeds;  // in config seed order
  std::filesystem::path csv_path;
  std::size_t range_warnings = 0;
};

/// Trains one fresh agent per seed and streams one RunRecord per episode to
/// `config.csv_path()`. Seeds run on up to `jobs` threads; rows are written
/// in seed order regardless of completion order, flushed row by row.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs = 1);

/// A single seed's training loop, without file output.
SeedOutcome train_seed(const ExperimentConfig& config, std::uint64_t seed,
                       std::vector<RunRecord>& records_out);

/// Tabular CSV contents, header plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::invalid_argument for unknown names.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Groups a run CSV by its seed column (order of first appearance) and
/// returns the column values per seed in row order.
std::vector<std::vector<double>> per_seed_column(const CsvTable& table, const std::string& column);

}  // namespace pbim
