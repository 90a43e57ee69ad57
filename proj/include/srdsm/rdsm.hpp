#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srdsm/gate.hpp"
#include "srdsm/param_space.hpp"
#include "srdsm/sensitivity.hpp"
#include "srdsm/surrogate.hpp"

namespace srdsm {

/// Ground-truth simulator: physical parameters to mechanism energies.
using SourceModel = std::function<EnergyVector(const ParamVector&)>;

/// Row fraction of TS a mechanism must reach to count as engaged.
inline constexpr double kEngagementThreshold = 0.03;

/// Network defaults per output: TS and PM 60-80, PL 65-70, DL 55-55, DC 50,
/// DI 16-16 with lr 0.0015 and a 20/80 test/train split.
NetworkSpec default_network(Output output);

// ----------------------------------------------------------------- direct

enum class DirectQueryMode {
  reduced,      // surrogate retrained on the retained inputs only
  full_frozen,  // 41-input surrogate queried with non-retained inputs at their means
};

std::string_view to_string(DirectQueryMode mode);
DirectQueryMode parse_query_mode(std::string_view name);

struct DirectOptions {
  NetworkSpec network = default_network(Output::TS);
  RetentionRule rule = RetentionRule::total();
  DirectQueryMode mode = DirectQueryMode::reduced;
  /// Skip training the 41-input surrogate when the query mode does not need it.
  bool train_full = true;
};

struct DirectRDSM {
  std::optional<SurrogateModel> full;
  ScreeningResult screening;
  std::vector<std::string> retained;
  std::vector<std::size_t> indices;
  SurrogateModel reduced;
  ParamVector baseline{};
  DirectQueryMode mode = DirectQueryMode::reduced;

  double predict(const ParamVector& x) const;
};

/// Screens TS, retains at most rule.max_k inputs and fits the surrogates.
DirectRDSM fit_direct(const Dataset& dataset, const DirectOptions& options);

// -------------------------------------------------------------- mechanism

struct MechanismOptions {
  NetworkSpec network;
  RetentionRule rule = RetentionRule::mechanism();

  static MechanismOptions defaults(Output mechanism);
};

struct MechanismRDSM {
  Output mechanism = Output::PM;
  std::vector<std::string> retained;
  std::vector<std::size_t> indices;
  SurrogateModel surrogate;
  ParamVector baseline{};  // catalog means; frozen inputs never reach the surrogate
  ScreeningResult screening;

  double predict(const ParamVector& x) const;
};

struct MechanismFit {
  std::optional<MechanismRDSM> model;
  bool needs_resampling = false;
  std::string reason;
};

/// Screens the mechanism energy, retains inputs and trains on them. A
/// mechanism without variance or without a significant input needs
/// resampling instead.
MechanismFit fit_mechanism(const Dataset& dataset, Output mechanism, const MechanismOptions& options);

// --------------------------------------------------------------- subspace

/// Rows where the mechanism reaches threshold * TS (TS > 0).
std::vector<std::size_t> engaged_rows(const Dataset& dataset, Output mechanism,
                                      double threshold = kEngagementThreshold);

/// Top `count` parameters by logworth when the mechanism is screened on its
/// engaged rows. Parameters listed in `required` are always included,
/// replacing the lowest-ranked picks.
std::vector<std::string> select_subspace_parameters(const Dataset& dataset, Output mechanism, std::size_t count,
                                                    const std::vector<std::string>& required = {"P", "XS", "GiII"},
                                                    double threshold = kEngagementThreshold);

struct SubspaceSample {
  std::vector<std::string> varied;
  Dataset all;
  std::vector<std::size_t> engaged;  // row positions in `all`
  Dataset fitting;                   // the engaged rows
  bool empty_fit = false;
};

/// Monte Carlo design over `varied` only, every other parameter at its mean,
/// evaluated by the source model; rows below the engagement threshold are
/// excluded from the fitting subset.
SubspaceSample resample_subspace(const SourceModel& source, const std::vector<std::string>& varied, std::size_t n,
                                 std::uint64_t seed, const SamplingDistribution& dist, Output mechanism = Output::DI,
                                 double threshold = kEngagementThreshold, std::size_t threads = 1);

// ----------------------------------------------------------------- summed

struct SummedPrediction {
  double TS = 0.0;
  std::array<double, 5> breakdown{};  // PL, DL, DC, DI, PM; DI zeroed outside the gate
  bool engaged = false;
};

struct SummedRDSM {
  std::array<MechanismRDSM, 5> mechanisms;  // PL, DL, DC, DI, PM
  EngagementGate gate;
  SamplingDistribution gate_dist = SamplingDistribution::uniform_pm20();

  SummedPrediction predict(const ParamVector& x) const;
  std::vector<std::string> inputs() const;  // union of retained inputs, catalog order
};

SummedPrediction summed_predict(const SummedRDSM& summed, const ParamVector& x);

struct SummedOptions {
  std::array<MechanismOptions, 5> mechanisms{MechanismOptions::defaults(Output::PL),
                                             MechanismOptions::defaults(Output::DL),
                                             MechanismOptions::defaults(Output::DC),
                                             MechanismOptions::defaults(Output::DI),
                                             MechanismOptions::defaults(Output::PM)};
  EngagementGate gate;
  SamplingDistribution dist = SamplingDistribution::uniform_pm20();
  std::size_t subspace_count = 12;
  std::size_t subspace_samples = 3277;
  std::uint64_t subspace_seed = 0;
  double threshold = kEngagementThreshold;
  std::size_t threads = 1;
};

struct SummedFit {
  SummedRDSM model;
  std::vector<std::string> subspace_params;
  SubspaceSample subspace;
};

/// PL, DL, DC and PM are fitted on the base dataset; DI is fitted on the
/// engaged rows of a focused resample of its subspace.
SummedFit fit_summed(const Dataset& base, const SourceModel& source, const SummedOptions& options);

// --------------------------------------------------------------------- UQ

struct UQRow {
  std::vector<std::string> subset;
  double mean = 0.0;
  double std = 0.0;
  /// Percent difference to the next subset, |a - b| / ((a + b) / 2) * 100;
  /// NaN on the last row.
  double pct_diff_mean = 0.0;
  double pct_diff_std = 0.0;
};

struct UQReport {
  std::vector<UQRow> rows;
  std::size_t n_samples = 0;
  std::string distribution;
};

double percent_difference(double a, double b);

/// For each nested subset, a Latin stratified sample of size n varies only
/// that subset (others at means) and the predictions are summarized.
UQReport uq_sweep(const ParamModel& predictor, const std::vector<std::vector<std::string>>& subsets, std::size_t n,
                  std::uint64_t seed, const SamplingDistribution& dist = SamplingDistribution::normal_10std(),
                  std::size_t threads = 1);

void save_uq_csv(const UQReport& report, const std::filesystem::path& path);

// ------------------------------------------------------------- comparison

struct ApproachStats {
  double mean = 0.0;
  double std = 0.0;
  double mae_pct = 0.0;
  double mae_std_pct = 0.0;
};

struct ComparisonSection {
  bool applicable = false;
  std::size_t n = 0;
  double truth_mean = 0.0;
  double truth_std = 0.0;
  ApproachStats direct;
  ApproachStats summed;
};

struct ComparisonReport {
  ComparisonSection all;
  ComparisonSection engaged;  // rows inside the gate
};

ComparisonReport compare_approaches(const ParamModel& direct, const ParamModel& summed,
                                    const std::function<bool(const ParamVector&)>& in_gate,
                                    const Dataset& validation);
ComparisonReport compare_approaches(const DirectRDSM& direct, const SummedRDSM& summed, const Dataset& validation);

void save_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path);

// ------------------------------------------------------------- validation

struct HoldoutSplit {
  Dataset fit;
  Dataset validation;
};

/// Moves n_holdout randomly chosen rows into the validation set.
HoldoutSplit hold_out(const Dataset& dataset, std::size_t n_holdout, std::uint64_t seed);

/// Concatenates datasets; row ids must stay unique.
Dataset concatenate(const Dataset& a, const Dataset& b, std::string origin);

/// Throws when any row id of `validation` also occurs in `training`.
void require_disjoint(const Dataset& training, const Dataset& validation);

// ------------------------------------------------------------ persistence

void save_direct(const DirectRDSM& direct, const std::filesystem::path& dir);
DirectRDSM load_direct(const std::filesystem::path& dir);
void save_summed(const SummedRDSM& summed, const std::filesystem::path& dir);
SummedRDSM load_summed(const std::filesystem::path& dir);

}  // namespace srdsm
