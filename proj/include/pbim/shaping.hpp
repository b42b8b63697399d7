#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pbim/intrinsic.hpp"
#include "pbim/mdp.hpp"

namespace pbim {

enum class ShapingMode {
  none,             // intrinsic reward dropped
  raw,              // intrinsic reward passed through unchanged
  pbim_naive,       // pass-through, discounted negation on the final step
  pbim_normalized,  // mean-centred pass-through, discounted negation on the final step
  potential,        // gamma*Phi_{t+1} - Phi_t with Phi_t = previous raw bonus, Phi_N = 0
};

/// Config names: none, raw, pbim, pbim_norm, potential.
ShapingMode parse_shaping_mode(const std::string& name);
std::string to_string(ShapingMode mode);

/// Streams raw intrinsic rewards F_t into shaped rewards F'_t, one episode at
/// a time.
///
/// In both PBIM modes every step except the last emits the (centred) raw
/// value, and the last step emits
///
///     -sum_{n=0}^{N-2} gamma^{n+1-N} * F'_n
///
/// over the values already emitted this episode, so the gamma-discounted sum
/// of an episode's emissions is zero. The final raw value is never emitted.
/// The correction is carried as a running accumulator c <- (c + F'_t)/gamma
/// rather than by materialising negative powers of gamma.
///
/// The normalized mode reads the tracker's frozen mean once per episode and
/// hands the episode's raw values to the tracker (`absorb`) when it ends; the
/// caller decides when to `refresh`.
class ShapingConverter {
 public:
  ShapingConverter(ShapingMode mode, double gamma, MeanTracker* tracker = nullptr,
                   double overflow_threshold = 1e12);

  /// Clears the buffers. Required between episodes.
  void begin_episode();

  /// Call once per environment step, with `episode_ending` true exactly on the
  /// last step (termination or truncation). Throws ProtocolError when called
  /// again after an ending without begin_episode().
  double shape_step(double raw_f, bool episode_ending);

  ShapingMode mode() const noexcept { return mode_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t step_index() const noexcept { return raw_.size(); }
  bool episode_finished() const noexcept { return finished_; }
  double episode_mean() const noexcept { return mean_; }

  const std::vector<double>& raw_buffer() const noexcept { return raw_; }
  const std::vector<double>& emitted_buffer() const noexcept { return emitted_; }

  /// Number of final-step corrections whose magnitude exceeded the threshold.
  std::size_t range_warnings() const noexcept { return range_warnings_; }

 private:
  ShapingMode mode_;
  double gamma_;
  MeanTracker* tracker_;
  double overflow_threshold_;

  std::vector<double> raw_;
  std::vector<double> emitted_;
  double correction_ = 0.0;
  double previous_potential_ = 0.0;
  double mean_ = 0.0;
  bool finished_ = false;
  std::size_t range_warnings_ = 0;
};

/// State potential for classic potential-based shaping.
struct PotentialFn {
  std::function<double(StateId)> phi;
  bool terminal_truncation = true;
};

/// gamma * Phi(s_next) - Phi(s), with Phi(s_next) taken as 0 on the step that
/// ends the episode when truncation is enabled.
double potential_shape(const PotentialFn& pot, StateId s, StateId s_next, double gamma,
                       bool next_is_terminal_step);

/// True when stalling for `t` steps on a tile already visited `n` times beats
/// moving on under the episodic count bonus alpha/n:
///
///     1 - gamma^t < sum_{k=0}^{t-1} alpha * gamma^k / (n + k + 1)
bool check_procrastination(double alpha, double gamma, unsigned n, unsigned t);

}  // namespace pbim
