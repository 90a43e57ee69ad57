#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "srdsm/damage_model.hpp"
#include "srdsm/error.hpp"
#include "srdsm/rdsm.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sampling.hpp"
#include "srdsm/stats.hpp"

using namespace srdsm;

namespace {

std::size_t idx(const char* name) { return catalog().index_of(name); }

// Synthetic source: each mechanism depends on a few parameters only.
EnergyVector synthetic_source(const ParamVector& x) {
  const auto m = catalog().means();
  auto r = [&](const char* n) { return x[idx(n)] / m[idx(n)]; };
  return EnergyVector::from_mechanisms(10.0 * r("X1800") + 2.0 * r("GS"), 25.0 * r("E1800"), 6.0 * r("XS"),
                                       std::max(0.0, 80.0 * (r("P") - 1.0)), 150.0 * r("A") + 40.0 * r("E"));
}

Dataset synthetic_dataset(std::size_t n, std::uint64_t seed) {
  const auto design = sample_lhs(n, kParamCount, seed);
  Dataset ds{Provenance::toy_model, "synthetic", {}};
  for (std::size_t r = 0; r < n; ++r) {
    const auto x = to_physical(design.row(r), SamplingDistribution::uniform_pm20());
    ds.rows.push_back({r, x, synthetic_source(x)});
  }
  return ds;
}

MechanismOptions quick(Output m) {
  auto o = MechanismOptions::defaults(m);
  o.network.hidden_layers = {8};
  o.network.epochs = 40;
  o.network.seed = 3;
  return o;
}

SummedRDSM synthetic_summed() {
  const auto ds = synthetic_dataset(200, 5);
  SummedRDSM s;
  for (std::size_t k = 0; k < 5; ++k) {
    const auto fit = fit_mechanism(ds, kMechanisms[k], quick(kMechanisms[k]));
    EXPECT_TRUE(fit.model.has_value()) << fit.reason;
    s.mechanisms[k] = *fit.model;
  }
  return s;
}

const SummedRDSM& summed_model() {
  static const SummedRDSM s = synthetic_summed();
  return s;
}

}  // namespace

TEST(Summed, BreakdownSumsExactly) {
  const auto& s = summed_model();
  const auto d = sample_mc(50, kParamCount, 2);
  for (std::size_t r = 0; r < 50; ++r) {
    const auto x = to_physical(d.row(r), SamplingDistribution::uniform_pm20());
    const auto p = s.predict(x);
    double sum = 0.0;
    for (const double v : p.breakdown) sum += v;
    EXPECT_EQ(p.TS, sum);
    if (!p.engaged) EXPECT_EQ(p.breakdown[3], 0.0);
  }
}

TEST(Summed, MechanismsRetainTheirDrivers) {
  const auto& s = summed_model();
  EXPECT_EQ(s.mechanisms[1].retained.front(), "E1800");
  EXPECT_EQ(s.mechanisms[2].retained.front(), "XS");
  EXPECT_EQ(s.mechanisms[4].retained.front(), "A");
}

TEST(Summed, FrozenParametersDoNotMoveThePrediction) {
  const auto& s = summed_model();
  const auto x = catalog().means();
  for (const auto& m : s.mechanisms) {
    const double base = m.predict(x);
    for (std::size_t i = 0; i < kParamCount; ++i) {
      if (std::find(m.indices.begin(), m.indices.end(), i) != m.indices.end()) continue;
      auto y = x;
      y[i] *= 1.15;
      ASSERT_EQ(m.predict(y), base) << to_string(m.mechanism) << " moved with " << catalog()[i].name;
    }
  }
}

TEST(Summed, PersistenceRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "srdsm_test_summed";
  std::filesystem::remove_all(dir);
  save_summed(summed_model(), dir);
  const auto back = load_summed(dir);
  const auto d = sample_mc(10, kParamCount, 8);
  for (std::size_t r = 0; r < 10; ++r) {
    const auto x = to_physical(d.row(r), SamplingDistribution::uniform_pm20());
    EXPECT_EQ(back.predict(x).TS, summed_model().predict(x).TS);
  }
  EXPECT_EQ(back.inputs(), summed_model().inputs());
  std::filesystem::remove_all(dir);
}

TEST(Mechanism, ConstantEnergyNeedsResampling) {
  auto ds = synthetic_dataset(60, 1);
  for (auto& r : ds.rows) r.energy.DI = 0.0;
  const auto fit = fit_mechanism(ds, Output::DI, quick(Output::DI));
  EXPECT_FALSE(fit.model.has_value());
  EXPECT_TRUE(fit.needs_resampling);
}

TEST(Direct, RetainsTheDominantInputsAndRoundTrips) {
  const auto ds = synthetic_dataset(300, 9);
  DirectOptions opt;
  opt.network.hidden_layers = {16, 16};
  opt.network.epochs = 150;
  opt.network.seed = 2;
  opt.train_full = false;
  const auto d = fit_direct(ds, opt);
  ASSERT_FALSE(d.retained.empty());
  EXPECT_EQ(d.retained.front(), "A");
  EXPECT_FALSE(d.full.has_value());
  EXPECT_LT(d.reduced.report.test_mae_pct, 5.0);
  const auto dir = std::filesystem::temp_directory_path() / "srdsm_test_direct";
  std::filesystem::remove_all(dir);
  save_direct(d, dir);
  const auto back = load_direct(dir);
  EXPECT_EQ(back.retained, d.retained);
  EXPECT_EQ(back.predict(ds.rows[0].x), d.predict(ds.rows[0].x));
  std::filesystem::remove_all(dir);
}

TEST(Direct, FullFrozenModeNeedsTheFullNetwork) {
  const auto ds = synthetic_dataset(150, 4);
  DirectOptions opt;
  opt.network.hidden_layers = {8};
  opt.network.epochs = 30;
  opt.mode = DirectQueryMode::full_frozen;
  const auto d = fit_direct(ds, opt);
  ASSERT_TRUE(d.full.has_value());
  // Non-retained inputs are frozen at their means before the full network sees them.
  auto x = catalog().means();
  const double base = d.predict(x);
  x[idx("GII")] *= 1.1;
  EXPECT_EQ(d.predict(x), base);
  EXPECT_THROW(fit_direct(synthetic_dataset(50, 1), opt), Error);
}

TEST(Uq, LinearModelStdMatchesAnalyticValue) {
  const std::vector<const char*> names{"A", "E", "XS"};
  const std::vector<double> coef{2.0, 5.0, 1.5};
  const auto m = catalog().means();
  const ParamModel f = [&](const ParamVector& x) {
    double s = 0.0;
    for (std::size_t k = 0; k < names.size(); ++k) s += coef[k] * x[idx(names[k])];
    return s;
  };
  const std::vector<std::vector<std::string>> subsets{{}, {"A"}, {"A", "E"}, {"A", "E", "XS"}};
  const auto rep = uq_sweep(f, subsets, 5000, 3);
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.rows[0].std, 0.0);
  double var = 0.0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const double sd = coef[k] * 0.1 * m[idx(names[k])];
    var += sd * sd;
    const auto& row = rep.rows[k + 1];
    EXPECT_NEAR(row.std, std::sqrt(var), 0.03 * std::sqrt(var)) << k;
    EXPECT_NEAR(row.mean, f(m), 1e-3 * f(m));
    // std_{k+1} >= std_k - 3 stderr, stderr of a sample std ~ std / sqrt(2(n - 1)).
    EXPECT_GE(row.std, rep.rows[k].std - 3.0 * rep.rows[k].std / std::sqrt(2.0 * 4999.0));
  }
  EXPECT_NEAR(rep.rows[1].pct_diff_std, percent_difference(rep.rows[1].std, rep.rows[2].std), 1e-12);
  EXPECT_TRUE(std::isnan(rep.rows.back().pct_diff_mean));
}

TEST(Uq, PercentDifferenceDefinition) {
  EXPECT_DOUBLE_EQ(percent_difference(5.84, 7.77), std::abs(5.84 - 7.77) / ((5.84 + 7.77) / 2.0) * 100.0);
  EXPECT_DOUBLE_EQ(percent_difference(3.0, 3.0), 0.0);
}

TEST(Compare, TrivialPredictorsAndEmptySections) {
  const auto ds = synthetic_dataset(40, 2);
  const ParamModel truth = [](const ParamVector& x) { return synthetic_source(x).TS; };
  const ParamModel off = [](const ParamVector& x) { return 1.1 * synthetic_source(x).TS; };
  const auto never = [](const ParamVector&) { return false; };
  const auto r = compare_approaches(truth, off, never, ds);
  EXPECT_TRUE(r.all.applicable);
  EXPECT_EQ(r.all.n, 40u);
  EXPECT_NEAR(r.all.direct.mae_pct, 0.0, 1e-12);
  EXPECT_NEAR(r.all.summed.mae_pct, 10.0, 1e-9);
  EXPECT_FALSE(r.engaged.applicable);
  const auto same = compare_approaches(off, off, [](const ParamVector&) { return true; }, ds);
  EXPECT_EQ(same.all.direct.mae_pct, same.all.summed.mae_pct);
  EXPECT_EQ(same.engaged.direct.std, same.engaged.summed.std);
  try {
    compare_approaches(truth, off, never, Dataset{});
    FAIL() << "expected empty input";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_input);
    EXPECT_NE(std::string(e.what()).find("empty validation set"), std::string::npos);
  }
}

TEST(Validation, HoldoutIsDisjointAndConcatenationKeepsIdsUnique) {
  const auto ds = synthetic_dataset(100, 6);
  const auto split = hold_out(ds, 25, 1);
  EXPECT_EQ(split.fit.size(), 75u);
  EXPECT_EQ(split.validation.size(), 25u);
  EXPECT_NO_THROW(require_disjoint(split.fit, split.validation));
  EXPECT_THROW(require_disjoint(ds, split.validation), Error);
  EXPECT_THROW(concatenate(ds, split.validation, "dup"), Error);
  auto other = synthetic_dataset(5, 7);
  for (auto& r : other.rows) r.id += 1000;
  EXPECT_EQ(concatenate(split.validation, other, "v").size(), 30u);
}

TEST(Subspace, ResampleVariesOnlyTheChosenParameters) {
  const SourceModel src = synthetic_source;
  const std::vector<std::string> varied{"P", "XS", "GiII"};
  const auto s = resample_subspace(src, varied, 200, 4, SamplingDistribution::uniform_pm20());
  const auto m = catalog().means();
  for (const auto& row : s.all.rows)
    for (std::size_t i = 0; i < kParamCount; ++i) {
      const bool is_varied = i == idx("P") || i == idx("XS") || i == idx("GiII");
      if (!is_varied) ASSERT_EQ(row.x[i], m[i]);
    }
  // DI is engaged when 80 (r_P - 1) >= 0.03 TS, i.e. only for P well above its mean.
  EXPECT_GT(s.engaged.size(), 0u);
  EXPECT_LT(s.engaged.size(), 200u);
  for (const auto& row : s.fitting.rows) EXPECT_GE(row.energy.DI, 0.03 * row.energy.TS);
}

TEST(Subspace, RequiredParametersAreForcedIn) {
  auto ds = synthetic_dataset(400, 12);
  const auto params = select_subspace_parameters(ds, Output::DI, 12);
  EXPECT_EQ(params.size(), 12u);
  for (const char* r : {"P", "XS", "GiII"})
    EXPECT_NE(std::find(params.begin(), params.end(), r), params.end()) << r;
  EXPECT_EQ(params.front(), "P");
}

TEST(ToyScreening, YieldStrengthIsAmongRetainedTotalEnergyDrivers) {
  const auto ds = generate_dataset(1555, 7, BendSpecimen::default_specimen());
  const auto s = screen_fdr_logworth(ds, Output::TS, RetentionRule::total());
  EXPECT_NE(std::find(s.retained.begin(), s.retained.end(), "A"), s.retained.end());
  EXPECT_LE(s.retained.size(), 4u);
}
