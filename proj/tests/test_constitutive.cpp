#include <gtest/gtest.h>

#include <cmath>

#include "srdsm/constitutive.hpp"
#include "srdsm/error.hpp"
#include "srdsm/param_space.hpp"

using namespace srdsm;

namespace {

// Composite Simpson rule on [a, b] with an even number of panels.
template <typename F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

const ParamVector kMeans = catalog().means();
double mean_of(const char* name) { return kMeans[catalog().index_of(name)]; }

}  // namespace

TEST(JohnsonCook, YieldAtZeroStrainIsA) {
  EXPECT_DOUBLE_EQ(jc_stress(0.0, mean_of("A"), mean_of("B"), mean_of("Aln")), 29.8);
}

TEST(JohnsonCook, HardeningIsMonotone) {
  double prev = jc_stress(0.0, 29.8, 103.6, 0.607);
  for (int i = 1; i <= 100; ++i) {
    const double s = jc_stress(0.002 * i, 29.8, 103.6, 0.607);
    EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(JohnsonCook, PlasticWorkMatchesQuadrature) {
  for (const double eps : {0.001, 0.01, 0.05, 0.2}) {
    const double exact = jc_plastic_work(eps, 29.8, 103.6, 0.607);
    // Substitute eps = t^2 to remove the endpoint singularity of eps^(n-1).
    const double quad = simpson([](double t) { return jc_stress(t * t, 29.8, 103.6, 0.607) * 2.0 * t; }, 0.0,
                                std::sqrt(eps), 2000);
    EXPECT_NEAR(quad, exact, 1e-9 * exact) << "eps=" << eps;
  }
}

TEST(JohnsonCook, PlasticWorkDerivativeIsStress) {
  const double h = 1e-6;
  for (const double eps : {0.01, 0.05, 0.1}) {
    const double fd = (jc_plastic_work(eps + h, 29.8, 103.6, 0.607) - jc_plastic_work(eps - h, 29.8, 103.6, 0.607)) /
                      (2.0 * h);
    EXPECT_NEAR(fd, jc_stress(eps, 29.8, 103.6, 0.607), 1e-6);
  }
}

TEST(JohnsonCook, RejectsNegativeStrain) {
  EXPECT_THROW(jc_stress(-1e-3, 29.8, 103.6, 0.607), Error);
}

TEST(Cdm, DamageIsZeroAtInitiation) {
  EXPECT_DOUBLE_EQ(cdm_damage_evolution(1.0, 53.0, 2800.0, 0.15, 0.01), 0.0);
}

TEST(Cdm, DamageGrowsTowardOne) {
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double d = cdm_damage_evolution(1.0 + 0.2 * i, 53.0, 2800.0, 0.15, 0.01);
    EXPECT_GT(d, prev);
    EXPECT_LT(d, 1.0);
    prev = d;
  }
}

TEST(Cdm, InadmissibleCharacteristicLengthIsRejected) {
  // U0 = X^2 / 2E = 53^2 / 5600 ~ 0.5016; L_c = 1 makes G_f - U0 L_c < 0.
  try {
    cdm_damage_evolution(1.5, 53.0, 2800.0, 0.15, 1.0);
    FAIL() << "expected admissibility error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::admissibility);
  }
}

TEST(Cdm, EffectiveStressAndSingularity) {
  const auto eff = cdm_effective_stress({10.0, 4.0, 2.0}, 0.5, 0.0, 0.75);
  EXPECT_DOUBLE_EQ(eff.s11, 20.0);
  EXPECT_DOUBLE_EQ(eff.s22, 4.0);
  EXPECT_DOUBLE_EQ(eff.s12, 8.0);
  try {
    cdm_effective_stress({1.0, 1.0, 1.0}, 1.0, 0.0, 0.0);
    FAIL() << "expected singularity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singularity);
  }
}

TEST(Cdm, InitiationPicksFirstDirectionAtStrength) {
  EXPECT_EQ(cdm_initiation({53.0, 0.0, 0.0}, 53.0, 10.0, 5.0), Direction::d11);
  EXPECT_EQ(cdm_initiation({0.0, 0.0, 5.0}, 53.0, 10.0, 5.0), Direction::d12);
  EXPECT_EQ(cdm_initiation({52.9, 9.9, 4.9}, 53.0, 10.0, 5.0), Direction::none);
}

TEST(Cdm, ShearDamageAndHardening) {
  EXPECT_DOUBLE_EQ(cdm_shear_damage(1.0, 0.2767, 0.714), 0.0);
  EXPECT_NEAR(cdm_shear_damage(std::exp(1.0), 0.2767, 0.714), 0.2767, 1e-15);
  EXPECT_DOUBLE_EQ(cdm_shear_damage(1e12, 0.2767, 0.714), 0.714);
  EXPECT_DOUBLE_EQ(cdm_shear_hardening(0.0, 5.16, 650.0, 0.729), 5.16);
  const double eps = 0.03;
  const double quad =
      simpson([](double t) { return cdm_shear_hardening(t * t, 5.16, 650.0, 0.729) * 2.0 * t; }, 0.0, std::sqrt(eps),
              2000);
  EXPECT_NEAR(quad, cdm_shear_plastic_work(eps, 5.16, 650.0, 0.729), 1e-8);
}

TEST(Cohesive, AreaUnderCurveEqualsFractureEnergy) {
  for (const double gc : {7.6, 16.6, 0.05}) {
    const CohesiveLaw law(1.0e6, 7.6, gc);
    // Piecewise linear: integrate each leg exactly with Simpson.
    const double d0 = law.onset_separation();
    const double df = law.failure_separation();
    const double area = simpson([&](double d) { return law.envelope(d); }, 0.0, d0, 2) +
                        simpson([&](double d) { return law.envelope(d); }, d0, df, 2);
    EXPECT_NEAR(area, gc, 1e-6 * gc);
    EXPECT_NEAR(law.dissipated(df), gc, 1e-12 * gc);
  }
}

TEST(Cohesive, EnvelopeShapeAndUnloading) {
  const CohesiveLaw law(1000.0, 5.0, 1.0);
  EXPECT_DOUBLE_EQ(law.envelope(0.0), 0.0);
  EXPECT_DOUBLE_EQ(law.envelope(law.onset_separation()), 5.0);
  EXPECT_DOUBLE_EQ(law.envelope(law.failure_separation()), 0.0);
  EXPECT_DOUBLE_EQ(law.envelope(2.0 * law.failure_separation()), 0.0);
  const double dmax = 0.5 * (law.onset_separation() + law.failure_separation());
  EXPECT_NEAR(law.traction(0.5 * dmax, dmax), 0.5 * law.envelope(dmax), 1e-12);
  EXPECT_DOUBLE_EQ(law.damage(0.0), 0.0);
  EXPECT_DOUBLE_EQ(law.damage(law.failure_separation()), 1.0);
}

TEST(Cohesive, RejectsSnapBack) {
  EXPECT_THROW(CohesiveLaw(1.0, 10.0, 1.0), Error);
  EXPECT_THROW(CohesiveLaw(-1.0, 1.0, 1.0), Error);
}

TEST(Cohesive, QuadraticInitiationIgnoresCompression) {
  EXPECT_DOUBLE_EQ(czm_initiation_index(-5.0, 0.0, 0.0, 1.0, 1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(czm_initiation_index(1.0, 1.0, 0.0, 2.0, 2.0, 2.0), 0.5);
  EXPECT_TRUE(czm_initiation(1.0, 0.0, 0.0, 1.0, 1.0, 1.0));
  EXPECT_FALSE(czm_initiation(0.5, 0.5, 0.5, 1.0, 1.0, 1.0));
}

TEST(BenzeggaghKenane, PureModesAndMixture) {
  const double gic = mean_of("GI"), giic = mean_of("GII"), eta = mean_of("BK");
  EXPECT_DOUBLE_EQ(bk_mixed_mode_gc(1.0, 0.0, 0.0, gic, giic, eta), gic);
  EXPECT_DOUBLE_EQ(bk_mixed_mode_gc(0.0, 1.0, 0.0, gic, giic, eta), giic);
  EXPECT_DOUBLE_EQ(bk_mixed_mode_gc(0.0, 0.0, 2.0, gic, giic, eta), giic);
  // Equal split: 7.6 + 9.0 * 0.5^2.6.
  EXPECT_NEAR(bk_mixed_mode_gc(1.0, 1.0, 0.0, gic, giic, eta), 7.6 + 9.0 * std::pow(0.5, 2.6), 1e-12);
  EXPECT_THROW(bk_mixed_mode_gc(0.0, 0.0, 0.0, gic, giic, eta), Error);
}
