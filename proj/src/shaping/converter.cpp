#include <cmath>
#include <stdexcept>
#include <string>

#include "pbim/errors.hpp"
#include "pbim/shaping.hpp"

namespace pbim {

ShapingMode parse_shaping_mode(const std::string& name) {
  if (name == "none") return ShapingMode::none;
  if (name == "raw") return ShapingMode::raw;
  if (name == "pbim") return ShapingMode::pbim_naive;
  if (name == "pbim_norm") return ShapingMode::pbim_normalized;
  if (name == "potential") return ShapingMode::potential;
  throw ConfigError("shaping", "unknown shaping mode '" + name +
                                   "' (expected none, raw, pbim, pbim_norm or potential)");
}

std::string to_string(ShapingMode mode) {
  switch (mode) {
    case ShapingMode::none:
      return "none";
    case ShapingMode::raw:
      return "raw";
    case ShapingMode::pbim_naive:
      return "pbim";
    case ShapingMode::pbim_normalized:
      return "pbim_norm";
    case ShapingMode::potential:
      return "potential";
  }
  return "none";
}

ShapingConverter::ShapingConverter(ShapingMode mode, double gamma, MeanTracker* tracker,
                                   double overflow_threshold)
    : mode_(mode), gamma_(gamma), tracker_(tracker), overflow_threshold_(overflow_threshold) {
  const bool pbim = mode == ShapingMode::pbim_naive || mode == ShapingMode::pbim_normalized;
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (pbim && gamma == 0.0)
    throw std::invalid_argument("PBIM correction needs gamma > 0");
  if (mode == ShapingMode::pbim_normalized && tracker == nullptr)
    throw std::invalid_argument("normalized PBIM needs a mean tracker");
  begin_episode();
}

void ShapingConverter::begin_episode() {
  raw_.clear();
  emitted_.clear();
  correction_ = 0.0;
  previous_potential_ = 0.0;
  finished_ = false;
  mean_ = (mode_ == ShapingMode::pbim_normalized) ? tracker_->frozen_mean() : 0.0;
}

double ShapingConverter::shape_step(double raw_f, bool episode_ending) {
  if (finished_)
    throw ProtocolError("shape_step called after the episode ended; call begin_episode first");

  double out = 0.0;
  switch (mode_) {
    case ShapingMode::none:
      out = 0.0;
      break;
    case ShapingMode::raw:
      out = raw_f;
      break;
    case ShapingMode::potential:
      out = (episode_ending ? 0.0 : gamma_ * raw_f) - previous_potential_;
      previous_potential_ = raw_f;
      break;
    case ShapingMode::pbim_naive:
    case ShapingMode::pbim_normalized:
      if (episode_ending) {
        out = -correction_;
        if (!std::isfinite(out) || std::fabs(out) > overflow_threshold_) ++range_warnings_;
      } else {
        out = raw_f - mean_;
        correction_ = (correction_ + out) / gamma_;
      }
      break;
  }

  raw_.push_back(raw_f);
  emitted_.push_back(out);
  if (episode_ending) {
    finished_ = true;
    if (mode_ == ShapingMode::pbim_normalized) tracker_->absorb(raw_);
  }
  return out;
}

double potential_shape(const PotentialFn& pot, StateId s, StateId s_next, double gamma,
                       bool next_is_terminal_step) {
  const double next = (next_is_terminal_step && pot.terminal_truncation) ? 0.0 : pot.phi(s_next);
  return gamma * next - pot.phi(s);
}

bool check_procrastination(double alpha, double gamma, unsigned n, unsigned t) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (n < 1 || t < 1) throw std::invalid_argument("visit count and stall length must be positive");
  double gain = 0.0;
  double discount = 1.0;
  for (unsigned k = 0; k < t; ++k) {
    gain += alpha * discount / static_cast<double>(n + k + 1);
    discount *= gamma;
  }
  // discount == gamma^t here
  return 1.0 - discount < gain;
}

}  // namespace pbim
