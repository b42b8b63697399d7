#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace pbim {

/// Trailing moving average; the first entries average over what is available.
std::vector<double> moving_average(const std::vector<double>& values, std::size_t window);

/// Mean and sample standard deviation across seeds per episode index, after
/// smoothing each seed's curve. Episodes covered by a single seed get a zero
/// band.
struct BandSeries {
  std::string label;
  std::vector<double> mean;
  std::vector<double> stddev;
};

BandSeries band_across_seeds(const std::vector<std::vector<double>>& per_seed, std::size_t window,
                             std::string label);

/// Renders series as a standalone SVG line chart with a +-1 std band.
std::string render_svg(const std::vector<BandSeries>& series, const std::string& column,
                       std::size_t window);

/// Reads each run CSV, smooths `column` per seed, and writes one series per
/// CSV to `out`. Throws std::invalid_argument for unknown columns or empty CSVs.
void emit_plot(const std::vector<std::filesystem::path>& csv_paths, const std::string& column,
               const std::filesystem::path& out, std::size_t window = 100);

}  // namespace pbim
