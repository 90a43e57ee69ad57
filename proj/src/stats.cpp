#include "srdsm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "srdsm/error.hpp"

namespace srdsm::stats {

double sum(std::span<const double> values) {
  double s = 0.0;
  double c = 0.0;
  for (const double v : values) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  return s + c;
}

double mean(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::empty_input, "mean of an empty sequence");
  return sum(values) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(), [m](double v) { return (v - m) * (v - m); });
  return std::sqrt(sum(sq) / static_cast<double>(values.size() - 1));
}

SlopeTest slope_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::invalid_argument, "slope test: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) fail(ErrorCode::invalid_argument, "slope test needs at least 3 points");
  const double mx = mean(x);
  const double my = mean(y);
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    xx[i] = dx * dx;
    yy[i] = dy * dy;
    xy[i] = dx * dy;
  }
  const double sxx = sum(xx);
  const double syy = sum(yy);
  const double sxy = sum(xy);

  SlopeTest out;
  if (!(sxx > 0.0)) {
    out.degenerate = true;
    return out;
  }
  out.slope = sxy / sxx;
  if (!(syy > 0.0)) return out;  // flat response: slope 0, p = 1

  // Through the correlation coefficient the statistic is invariant to affine
  // rescaling of either variable.
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = static_cast<double>(n - 2);
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  if (one_minus_r2 <= 0.0) {
    out.t = std::copysign(HUGE_VAL, r);
    out.p = 0.0;
    return out;
  }
  out.t = r * std::sqrt(dof / one_minus_r2);
  const boost::math::students_t dist(dof);
  out.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t))));
  return out;
}

std::vector<double> benjamini_hochberg(std::span<const double> p) {
  const std::size_t m = p.size();
  for (const double v : p)
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorCode::invalid_argument, "p-values must lie in [0, 1]");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

  std::vector<double> adjusted(m);
  double running = 1.0;
  for (std::size_t k = m; k-- > 0;) {
    const std::size_t rank = k + 1;
    const double candidate = std::min(1.0, static_cast<double>(m) * p[order[k]] / static_cast<double>(rank));
    running = std::min(running, candidate);
    adjusted[order[k]] = running;
  }
  return adjusted;
}

}  // namespace srdsm::stats
