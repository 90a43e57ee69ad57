#pragma once

#include <array>
#include <string>
#include <string_view>

#include "srdsm/param_space.hpp"

namespace srdsm {

/// Boundary segment in the normalized (P, XS) plane.
struct GateSegment {
  double p0 = 0.0;
  double xs0 = 0.0;
  double p1 = 0.0;
  double xs1 = 0.0;
};

/// Disbond engagement region in normalized (P, XS, GiII) coordinates.
///
/// The boundary is the ruled surface joining the segment at GiII = 0 to the
/// segment at GiII = 1: at height z both endpoints are interpolated linearly,
/// giving a line in the (P, XS) plane. A point is engaged when it lies on
/// the side of that line containing (1, 1); points on the line are engaged.
class EngagementGate {
 public:
  static constexpr std::array<std::string_view, 3> kAxes{"P", "XS", "GiII"};

  /// Published boundary: (0.4, 0)-(0, 0.5) at z = 0, (0.85, 0.3)-(0, 1) at z = 1.
  EngagementGate() : EngagementGate({0.4, 0.0, 0.0, 0.5}, {0.85, 0.3, 0.0, 1.0}) {}
  EngagementGate(GateSegment bottom, GateSegment top);

  const GateSegment& bottom() const { return bottom_; }
  const GateSegment& top() const { return top_; }

  /// Signed distance-like value, >= 0 on the engaged side.
  double side(double p, double xs, double giii) const;
  /// Coordinates must lie in [0, 1].
  bool engaged(double p, double xs, double giii) const;
  /// Normalizes P, XS and GiII of x over the support of dist (bounded kinds).
  bool engaged(const ParamVector& x, const SamplingDistribution& dist) const;

  std::string to_json() const;
  static EngagementGate from_json(std::string_view text);

 private:
  GateSegment bottom_;
  GateSegment top_;
};

}  // namespace srdsm
