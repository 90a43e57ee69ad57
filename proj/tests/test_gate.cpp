#include <gtest/gtest.h>

#include "srdsm/error.hpp"
#include "srdsm/gate.hpp"
#include "srdsm/param_space.hpp"

using namespace srdsm;

TEST(Gate, MonotoneTowardTheEngagedCorner) {
  const EngagementGate gate;
  const int n = 101;
  for (int k = 0; k < n; ++k) {
    const double z = k / 100.0;
    for (int j = 0; j < n; ++j) {
      bool seen_engaged = false;
      for (int i = 0; i < n; ++i) {
        const bool e = gate.engaged(i / 100.0, j / 100.0, z);
        ASSERT_FALSE(seen_engaged && !e) << "P not monotone at " << i << "," << j << "," << k;
        seen_engaged = seen_engaged || e;
      }
    }
    for (int i = 0; i < n; ++i) {
      bool seen_engaged = false;
      for (int j = 0; j < n; ++j) {
        const bool e = gate.engaged(i / 100.0, j / 100.0, z);
        ASSERT_FALSE(seen_engaged && !e) << "XS not monotone at " << i << "," << j << "," << k;
        seen_engaged = seen_engaged || e;
      }
    }
  }
}

TEST(Gate, PublishedVerticesLieOnTheBoundary) {
  const EngagementGate gate;
  const double v[4][3] = {{0.4, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.85, 0.3, 1.0}, {0.0, 1.0, 1.0}};
  for (const auto& p : v) {
    EXPECT_NEAR(gate.side(p[0], p[1], p[2]), 0.0, 1e-12);
    EXPECT_TRUE(gate.engaged(p[0], p[1], p[2]));
  }
}

TEST(Gate, CornersAndClosure) {
  const EngagementGate gate;
  EXPECT_FALSE(gate.engaged(0.0, 0.0, 0.0));
  EXPECT_TRUE(gate.engaged(1.0, 1.0, 1.0));
  EXPECT_FALSE(gate.engaged(0.1, 0.1, 0.5));
  // Midpoint of the z = 0.5 boundary line is engaged (closed boundary).
  EXPECT_TRUE(gate.engaged(0.5 * (0.625 + 0.0), 0.5 * (0.15 + 0.75), 0.5));
  EXPECT_THROW(gate.engaged(1.1, 0.5, 0.5), Error);
}

TEST(Gate, PhysicalQueryNormalizesOverTheSupport) {
  const EngagementGate gate;
  const auto dist = SamplingDistribution::uniform_pm20();
  auto x = catalog().means();
  for (const char* name : {"P", "XS", "GiII"}) x[catalog().index_of(name)] = dist.upper(catalog().index_of(name));
  EXPECT_TRUE(gate.engaged(x, dist));
  for (const char* name : {"P", "XS", "GiII"}) x[catalog().index_of(name)] = dist.lower(catalog().index_of(name));
  EXPECT_FALSE(gate.engaged(x, dist));
}

TEST(Gate, JsonRoundTripAndValidation) {
  const EngagementGate gate({0.3, 0.0, 0.0, 0.3}, {0.9, 0.2, 0.1, 1.0});
  const auto back = EngagementGate::from_json(gate.to_json());
  EXPECT_EQ(back.to_json(), gate.to_json());
  EXPECT_DOUBLE_EQ(back.top().p0, 0.9);
  EXPECT_THROW(EngagementGate::from_json(R"({"z0": [[0,0],[0,1]], "extra": 1})"), Error);
  EXPECT_THROW(EngagementGate::from_json("not json"), Error);
}
