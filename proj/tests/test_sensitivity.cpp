#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "srdsm/error.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sensitivity.hpp"
#include "srdsm/stats.hpp"

using namespace srdsm;

namespace {

ScreeningResult fake_screening(const std::vector<std::pair<std::string, double>>& ranked) {
  ScreeningResult r;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    ScreeningEntry e;
    e.name = ranked[i].first;
    e.index = i;
    e.logworth = ranked[i].second;
    r.entries.push_back(e);
  }
  return r;
}

using Names = std::vector<std::string>;

}  // namespace

TEST(BenjaminiHochberg, MatchesBruteForceOnFuzzedSets) {
  Rng rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 1 + rng.index(41);
    std::vector<double> p(m);
    const bool ties = trial % 3 == 0;
    for (auto& v : p) {
      v = rng.uniform_open();
      if (ties) v = std::round(v * 8.0) / 8.0;
      if (trial % 7 == 0) v *= 1e-6;
    }
    const auto got = stats::benjamini_hochberg(p);
    const auto want = oracle::bh_brute_force(p);
    for (std::size_t i = 0; i < m; ++i) ASSERT_EQ(got[i], want[i]) << "trial " << trial << " i " << i;
  }
}

TEST(BenjaminiHochberg, KnownValuesAndValidation) {
  const std::vector<double> p{0.01, 0.04, 0.03, 0.005};
  const auto adj = stats::benjamini_hochberg(p);
  EXPECT_DOUBLE_EQ(adj[3], 0.02);
  EXPECT_DOUBLE_EQ(adj[0], 0.02);
  EXPECT_DOUBLE_EQ(adj[2], 0.04);
  EXPECT_DOUBLE_EQ(adj[1], 0.04);
  EXPECT_THROW(stats::benjamini_hochberg(std::vector<double>{1.5}), Error);
}

TEST(SlopeTest, PerfectAndDegenerateCases) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_EQ(stats::slope_test(x, std::vector<double>{3, 5, 7, 9, 11}).p, 0.0);
  EXPECT_DOUBLE_EQ(stats::slope_test(x, std::vector<double>{3, 5, 7, 9, 11}).slope, 2.0);
  const auto flat_x = stats::slope_test(std::vector<double>{2, 2, 2, 2}, std::vector<double>{1, 2, 3, 4});
  EXPECT_TRUE(flat_x.degenerate);
  EXPECT_EQ(flat_x.p, 1.0);
  EXPECT_EQ(stats::slope_test(x, std::vector<double>{1, 1, 1, 1, 1}).p, 1.0);
}

TEST(SlopeTest, MatchesTabulatedStudentT) {
  // r = 0.5, n = 12: t = 0.5 * sqrt(10 / 0.75) = 1.8257; two-sided p = 0.0980 (10 dof).
  std::vector<double> x, y;
  Rng rng(3);
  for (int i = 0; i < 12; ++i) x.push_back(rng.normal());
  // Build y with an exact sample correlation of 0.5 against x.
  std::vector<double> z;
  for (int i = 0; i < 12; ++i) z.push_back(rng.normal());
  const double mx = stats::mean(x), mz = stats::mean(z);
  double sxz = 0, sxx = 0;
  for (int i = 0; i < 12; ++i) {
    sxz += (x[i] - mx) * (z[i] - mz);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  std::vector<double> e(12);
  for (int i = 0; i < 12; ++i) e[i] = (z[i] - mz) - sxz / sxx * (x[i] - mx);
  const double sx = std::sqrt(sxx);
  double see = 0;
  for (double v : e) see += v * v;
  const double se = std::sqrt(see);
  for (int i = 0; i < 12; ++i) y.push_back(0.5 * (x[i] - mx) / sx + std::sqrt(0.75) * e[i] / se);
  const auto t = stats::slope_test(x, y);
  EXPECT_NEAR(t.t, 1.825742, 1e-5);
  EXPECT_NEAR(t.p, 0.09803, 2e-4);
}

TEST(Logworth, IsNegativeLogTen) {
  EXPECT_DOUBLE_EQ(logworth(0.05), -std::log10(0.05));
  EXPECT_DOUBLE_EQ(logworth(0.0), 300.0);
  EXPECT_DOUBLE_EQ(logworth(1.0), 0.0);
}

TEST(Retention, TotalEnergyTableKeepsFour) {
  const auto s = fake_screening({{"A", 59.38}, {"E", 18.67}, {"XS", 12.99}, {"Aln", 12.54}, {"GII", 3.96}, {"P", 3.90}});
  EXPECT_EQ(retain_parameters(s, RetentionRule::total()), (Names{"A", "E", "XS", "Aln"}));
}

TEST(Retention, MechanismTables) {
  const auto rule = RetentionRule::mechanism();
  EXPECT_EQ(retain_parameters(fake_screening({{"A", 100.56}, {"E", 45.35}, {"Aln", 18.08}, {"P", 6.30}, {"B", 3.34}}),
                              rule),
            (Names{"A", "E", "Aln"}));
  EXPECT_EQ(retain_parameters(
                fake_screening({{"X1800", 42.18}, {"XS", 38.01}, {"E1800", 24.83}, {"P", 8.12}, {"GII", 5.14}}), rule),
            (Names{"X1800", "XS", "E1800"}));
  EXPECT_EQ(retain_parameters(
                fake_screening({{"XS", 25.97}, {"X7781", 18.08}, {"E1800", 11.00}, {"alpha12", 7.79}, {"P", 4.74}}),
                rule),
            (Names{"XS", "X7781", "E1800"}));
  EXPECT_EQ(retain_parameters(
                fake_screening({{"E1800", 34.86}, {"X1800", 14.12}, {"P", 6.68}, {"alpha12", 5.36}, {"G1800", 4.55}}),
                rule),
            (Names{"E1800", "X1800"}));
}

TEST(Retention, FloorAndGentleDecay) {
  EXPECT_TRUE(retain_parameters(fake_screening({{"a", 1.2}, {"b", 1.0}}), RetentionRule::total()).empty());
  EXPECT_EQ(retain_parameters(fake_screening({{"a", 10}, {"b", 9}, {"c", 8}, {"d", 7}, {"e", 6}, {"f", 5}}),
                              RetentionRule::total()),
            (Names{"a", "b", "c", "d"}));
  EXPECT_EQ(retain_parameters(fake_screening({{"a", 10}, {"b", 1.31}, {"c", 1.0}}), RetentionRule::total()),
            (Names{"a"}));
  EXPECT_EQ(retain_parameters(fake_screening({{"a", 10}, {"b", 9}, {"c", 1.29}}), RetentionRule::total()),
            (Names{"a", "b"}));
}

TEST(Screening, RanksTrueSignalsAndIsAffineInvariant) {
  const std::size_t n = 400;
  Rng rng(5);
  std::vector<std::vector<double>> cols(6, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& c : cols) c[r] = rng.uniform_open();
    y[r] = 5.0 * cols[2][r] + 1.0 * cols[4][r] + 0.3 * rng.normal();
  }
  const Names names{"a", "b", "c", "d", "e", "f"};
  const auto s = screen_fdr_logworth(cols, names, y, "y");
  EXPECT_EQ(s.entries[0].name, "c");
  EXPECT_EQ(s.entries[1].name, "e");
  EXPECT_EQ(s.retained.front(), "c");
  std::vector<double> y2(n);
  for (std::size_t r = 0; r < n; ++r) y2[r] = -3.5 * y[r] + 120.0;
  const auto s2 = screen_fdr_logworth(cols, names, y2, "y");
  for (const auto& e : s.entries) EXPECT_NEAR(s2.find(e.name).logworth, e.logworth, 1e-8 * (1.0 + e.logworth));
  EXPECT_EQ(s.retained, s2.retained);
}

TEST(Screening, ZeroVarianceColumnIsNotSignificant) {
  const std::size_t n = 50;
  Rng rng(1);
  std::vector<std::vector<double>> cols(2, std::vector<double>(n, 3.0));
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    cols[0][r] = rng.uniform_open();
    y[r] = cols[0][r];
  }
  const auto s = screen_fdr_logworth(cols, Names{"x", "const"}, y, "y");
  EXPECT_TRUE(s.find("const").zero_variance);
  EXPECT_EQ(s.find("const").raw_p, 1.0);
  EXPECT_THROW(screen_fdr_logworth(cols, Names{"x", "const"}, std::vector<double>(10, 1.0), "y"), Error);
}

TEST(Sobol, AdditiveModelSplitsVarianceEvenly) {
  SobolOptions opt;
  opt.n_base = 1 << 13;
  opt.seed = 11;
  const Names names{"x1", "x2", "x3", "x4"};
  const auto r = sobol_indices([](std::span<const double> u) { return u[0] + u[1]; }, names, opt);
  EXPECT_NEAR(r.entries[0].S1, 0.5, 0.02);
  EXPECT_NEAR(r.entries[1].S1, 0.5, 0.02);
  EXPECT_NEAR(r.entries[2].ST, 0.0, 1e-12);
  EXPECT_NEAR(r.entries[3].S1, 0.0, 0.02);
  EXPECT_EQ(r.evaluations_used, opt.n_base * 6);
}

TEST(Sobol, IshigamiMatchesClosedForm) {
  const double a = 7.0, b = 0.1;
  const auto want = oracle::ishigami_indices(a, b);
  SobolOptions opt;
  opt.n_base = 1 << 13;
  opt.seed = 23;
  const auto pi = std::numbers::pi;
  const auto r = sobol_indices(
      [&](std::span<const double> u) {
        return oracle::ishigami(-pi + 2 * pi * u[0], -pi + 2 * pi * u[1], -pi + 2 * pi * u[2], a, b);
      },
      Names{"x1", "x2", "x3"}, opt);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.entries[i].S1, want.S1[i], 0.02) << i;
    EXPECT_NEAR(r.entries[i].ST, want.ST[i], 0.03) << i;
    EXPECT_GT(r.entries[i].S1_stderr, 0.0);
  }
  EXPECT_EQ(r.ranking().front(), "x1");
}

TEST(Sobol, ConstantModelIsDegenerate) {
  SobolOptions opt;
  opt.n_base = 256;
  const auto r = sobol_indices([](std::span<const double>) { return 4.0; }, Names{"a", "b"}, opt);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isnan(r.entries[0].S1));
}

TEST(Sobol, RankingStableAcrossSampleSizes) {
  SobolOptions opt;
  opt.seed = 2;
  const auto c = sobol_convergence(
      [](std::span<const double> u) { return 4.0 * u[0] + 2.0 * u[1] + 1.0 * u[2] + 0.0 * u[3]; },
      Names{"a", "b", "c", "d"}, 512, 4096, 3, opt);
  EXPECT_TRUE(c.ranking_stable);
  EXPECT_EQ(c.top_large, (Names{"a", "b", "c"}));
}
