#include "pbim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbim/errors.hpp"

namespace pbim {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 500;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kTolerance) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fastest on this side of the mean.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("t distribution needs positive degrees of freedom");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

Alternative parse_alternative(const std::string& name) {
  if (name == "a_greater") return Alternative::a_greater;
  if (name == "b_greater") return Alternative::b_greater;
  throw ConfigError("alt", "expected a_greater or b_greater, got '" + name + "'");
}

StatsResult welch_t_test(std::span<const double> a, std::span<const double> b, Alternative alt) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("Welch test needs at least two observations per sample");
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("sample a contains a non-finite value");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("sample b contains a non-finite value");

  StatsResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = mean_of(a);
  r.mean_b = mean_of(b);
  const double var_a = sample_variance(a, r.mean_a);
  const double var_b = sample_variance(b, r.mean_b);
  r.std_a = std::sqrt(var_a);
  r.std_b = std::sqrt(var_b);

  const double ra = var_a / static_cast<double>(r.n_a);
  const double rb = var_b / static_cast<double>(r.n_b);
  const double se2 = ra + rb;
  const double diff = r.mean_a - r.mean_b;

  if (se2 == 0.0) {
    r.degrees_of_freedom = static_cast<double>(r.n_a + r.n_b - 2);
    if (diff == 0.0) {
      r.exact_tie = true;
      r.t_statistic = 0.0;
      r.p_one_sided = 0.5;
      return r;
    }
    r.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
  } else {
    r.t_statistic = diff / std::sqrt(se2);
    r.degrees_of_freedom =
        se2 * se2 / (ra * ra / static_cast<double>(r.n_a - 1) + rb * rb / static_cast<double>(r.n_b - 1));
  }

  // P(T >= t) for a_greater, P(T <= t) = P(T >= -t) for b_greater.
  const double t = alt == Alternative::a_greater ? r.t_statistic : -r.t_statistic;
  r.p_one_sided = student_t_cdf(-t, r.degrees_of_freedom);
  return r;
}

}  // namespace pbim
