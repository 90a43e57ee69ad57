#include "srdsm/gate.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "srdsm/error.hpp"

namespace srdsm {

namespace {

double lerp(double a, double b, double t) { return t == 0.0 ? a : (t == 1.0 ? b : a + (b - a) * t); }

void check_unit(double v, std::string_view axis) {
  if (!(v >= 0.0 && v <= 1.0))
    fail(ErrorCode::invalid_argument, "gate coordinate " + std::string(axis) + " = " + std::to_string(v) +
                                          " lies outside [0, 1]");
}

// Raw cross product of (b - a) and (q - a) at height z.
double cross_at(const GateSegment& lo, const GateSegment& hi, double p, double xs, double z) {
  const double ap = lerp(lo.p0, hi.p0, z), axs = lerp(lo.xs0, hi.xs0, z);
  const double bp = lerp(lo.p1, hi.p1, z), bxs = lerp(lo.xs1, hi.xs1, z);
  return (bp - ap) * (xs - axs) - (bxs - axs) * (p - ap);
}

}  // namespace

EngagementGate::EngagementGate(GateSegment bottom, GateSegment top) : bottom_(bottom), top_(top) {
  for (const auto& s : {bottom_, top_})
    for (const double v : {s.p0, s.xs0, s.p1, s.xs1})
      if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "gate vertices must be finite");
  // The reference corner must be strictly off the boundary everywhere.
  for (const double z : {0.0, 0.5, 1.0}) {
    const double ref = cross_at(bottom_, top_, 1.0, 1.0, z);
    const double len = std::hypot(lerp(bottom_.p1, top_.p1, z) - lerp(bottom_.p0, top_.p0, z),
                                  lerp(bottom_.xs1, top_.xs1, z) - lerp(bottom_.xs0, top_.xs0, z));
    if (!(len > 0.0) || ref == 0.0)
      fail(ErrorCode::invalid_argument, "gate boundary is degenerate or passes through (1, 1)");
  }
  if ((cross_at(bottom_, top_, 1.0, 1.0, 0.0) > 0.0) != (cross_at(bottom_, top_, 1.0, 1.0, 1.0) > 0.0))
    fail(ErrorCode::invalid_argument, "gate boundary segments have inconsistent orientation");
}

double EngagementGate::side(double p, double xs, double giii) const {
  const double ref = cross_at(bottom_, top_, 1.0, 1.0, giii);
  const double v = cross_at(bottom_, top_, p, xs, giii);
  return ref > 0.0 ? v : -v;
}

bool EngagementGate::engaged(double p, double xs, double giii) const {
  check_unit(p, kAxes[0]);
  check_unit(xs, kAxes[1]);
  check_unit(giii, kAxes[2]);
  return side(p, xs, giii) >= 0.0;
}

bool EngagementGate::engaged(const ParamVector& x, const SamplingDistribution& dist) const {
  if (!dist.bounded())
    fail(ErrorCode::invalid_argument, "gate normalization needs a bounded distribution, got " + dist.tag());
  std::array<double, 3> u{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = catalog().index_of(kAxes[k]);
    const double lo = dist.lower(i), hi = dist.upper(i);
    double v = (x[i] - lo) / (hi - lo);
    if (v < 0.0 && v > -1e-12) v = 0.0;
    if (v > 1.0 && v < 1.0 + 1e-12) v = 1.0;
    u[k] = v;
  }
  return engaged(u[0], u[1], u[2]);
}

std::string EngagementGate::to_json() const {
  auto seg = [](const GateSegment& s) {
    return nlohmann::json::array({nlohmann::json::array({s.p0, s.xs0}), nlohmann::json::array({s.p1, s.xs1})});
  };
  nlohmann::json j = {{"axes", {"P", "XS", "GiII"}}, {"z0", seg(bottom_)}, {"z1", seg(top_)}};
  return j.dump();
}

EngagementGate EngagementGate::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("gate: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::parse_error, "gate: expected an object");
  for (const auto& [key, value] : j.items())
    if (key != "axes" && key != "z0" && key != "z1") fail(ErrorCode::schema_mismatch, "gate: unknown field '" + key + "'");
  try {
    if (j.contains("axes") && j.at("axes") != nlohmann::json({"P", "XS", "GiII"}))
      fail(ErrorCode::schema_mismatch, "gate: axes must be [\"P\", \"XS\", \"GiII\"]");
    auto seg = [](const nlohmann::json& s) {
      const auto v = s.get<std::array<std::array<double, 2>, 2>>();
      return GateSegment{v[0][0], v[0][1], v[1][0], v[1][1]};
    };
    return EngagementGate(seg(j.at("z0")), seg(j.at("z1")));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::schema_mismatch, std::string("gate: ") + e.what());
  }
}

}  // namespace srdsm
