#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace srdsm::stats {

/// Neumaier-compensated sum; the order of terms is the order of the span.
double sum(std::span<const double> values);
double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> values);

struct SlopeTest {
  double slope = 0.0;
  double t = 0.0;
  double p = 1.0;
  /// The regressor has zero variance, so no slope is defined (p = 1).
  bool degenerate = false;
};

/// Two-sided t-test on the slope of the least-squares line y = a + b*x.
SlopeTest slope_test(std::span<const double> x, std::span<const double> y);

/// Benjamini-Hochberg step-up adjusted p-values, returned in input order.
/// adjusted_(i) = min over j >= i of min(1, m * p_(j) / j) on the sorted p.
std::vector<double> benjamini_hochberg(std::span<const double> p);

}  // namespace srdsm::stats
