#pragma once

#include <cstddef>
#include <span>

namespace landscape {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 gives 95%).
Interval wilson_interval(std::size_t hits, std::size_t trials, double z = 1.959963984540054);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of ys on xs; needs at least two distinct xs.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

double mean(std::span<const double> xs);
/// Sample standard deviation (divisor size - 1).
double stddev(std::span<const double> xs);
double median(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);
/// Asymptotic two-sample KS critical value sqrt(-ln(alpha/2)/2) * sqrt((n+m)/(nm)).
double ks_critical(std::size_t n, std::size_t m, double alpha = 0.01);

}  // namespace landscape
