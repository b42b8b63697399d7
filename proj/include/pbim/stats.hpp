#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace pbim {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t with `dof` (real, > 0) degrees of freedom.
double student_t_cdf(double t, double dof);

enum class Alternative { a_greater, b_greater };

Alternative parse_alternative(const std::string& name);

struct StatsResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;  // Welch-Satterthwaite
  double p_one_sided = 0.5;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double std_a = 0.0;  // sample standard deviations
  double std_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  bool exact_tie = false;  // both samples constant and equal
};

/// Welch's unequal-variance t-test with a one-sided p-value for the chosen
/// alternative. Both samples need at least two finite values.
///
/// When both samples have zero variance the statistic is 0 with p = 0.5 for
/// equal means (flagged as an exact tie) and +-inf with p in {0, 1}
/// otherwise.
StatsResult welch_t_test(std::span<const double> a, std::span<const double> b, Alternative alt);

}  // namespace pbim
