#include "pbim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pbim/experiment.hpp"

namespace pbim {

std::vector<double> moving_average(const std::vector<double>& values, std::size_t window) {
  if (window == 0) throw std::invalid_argument("moving-average window must be positive");
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= window) sum -= values[i - window];
    out[i] = sum / static_cast<double>(std::min(i + 1, window));
  }
  return out;
}

BandSeries band_across_seeds(const std::vector<std::vector<double>>& per_seed, std::size_t window,
                             std::string label) {
  BandSeries band;
  band.label = std::move(label);
  std::vector<std::vector<double>> smoothed;
  std::size_t longest = 0;
  for (const auto& s : per_seed) {
    smoothed.push_back(moving_average(s, window));
    longest = std::max(longest, s.size());
  }
  band.mean.resize(longest);
  band.stddev.resize(longest);
  for (std::size_t i = 0; i < longest; ++i) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& s : smoothed)
      if (i < s.size()) {
        sum += s[i];
        ++n;
      }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& s : smoothed)
      if (i < s.size()) ss += (s[i] - mean) * (s[i] - mean);
    band.mean[i] = mean;
    band.stddev[i] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }
  return band;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string render_svg(const std::vector<BandSeries>& series, const std::string& column,
                       std::size_t window) {
  constexpr double kWidth = 800, kHeight = 450;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::size_t episodes = 1;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    episodes = std::max(episodes, s.mean.size());
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      lo = std::min(lo, s.mean[i] - s.stddev[i]);
      hi = std::max(hi, s.mean[i] + s.stddev[i]);
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) lo -= 1.0, hi += 1.0;

  auto x_of = [&](std::size_t i) {
    return episodes <= 1 ? kLeft + plot_w / 2
                         : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(episodes - 1);
  };
  auto y_of = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << xml_escape(column) << " (" << window << "-episode moving average)</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"#444\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y_of(v) + 4) << "\" text-anchor=\"end\">"
        << num(v) << "</text>\n";
    const auto ep = static_cast<std::size_t>(std::llround(static_cast<double>(episodes - 1) * k / 4.0));
    svg << "<text x=\"" << num(x_of(ep)) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << ep << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 22
      << "\" text-anchor=\"middle\">episode</text>\n"
      << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kHeight - 6
      << "\" text-anchor=\"end\" font-size=\"10\">band: &#177;1 sample std across seeds</text>\n"
      << "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.mean.empty()) continue;

    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < s.mean.size(); ++i)
      svg << num(x_of(i)) << ',' << num(y_of(s.mean[i] + s.stddev[i])) << ' ';
    for (std::size_t i = s.mean.size(); i-- > 0;)
      svg << num(x_of(i)) << ',' << num(y_of(s.mean[i] - s.stddev[i])) << ' ';
    svg << "\"/>\n";

    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.mean.size(); ++i)
      svg << num(x_of(i)) << ',' << num(y_of(s.mean[i])) << ' ';
    svg << "\"/>\n";
    if (s.mean.size() == 1)
      svg << "<circle cx=\"" << num(x_of(0)) << "\" cy=\"" << num(y_of(s.mean[0])) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";

    const double ly = kTop + 14 + 16 * static_cast<double>(k);
    svg << "<rect x=\"" << kLeft + 10 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"10\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"" << kLeft + 28 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::vector<std::filesystem::path>& csv_paths, const std::string& column,
               const std::filesystem::path& out, std::size_t window) {
  if (csv_paths.empty()) throw std::invalid_argument("plot needs at least one CSV");
  std::vector<BandSeries> series;
  for (const auto& path : csv_paths) {
    const CsvTable table = read_csv(path);
    series.push_back(band_across_seeds(per_seed_column(table, column), window, path.stem().string()));
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + out.string() + " for writing");
  f << render_svg(series, column, window);
}

}  // namespace pbim
