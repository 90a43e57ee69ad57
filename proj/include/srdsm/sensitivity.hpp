#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srdsm/param_space.hpp"

namespace srdsm {

// ---------------------------------------------------------------- screening

struct ScreeningEntry {
  std::string name;
  std::size_t index = 0;  // column position in the screened inputs
  double raw_p = 1.0;
  double fdr_p = 1.0;
  double logworth = 0.0;
  bool zero_variance = false;
};

/// Keep parameters with logworth >= logworth_floor; among the first max_k + 1
/// of them, cut after the last position where next/current < drop_ratio; with
/// no such drop keep max_k.
struct RetentionRule {
  std::size_t max_k = 4;
  double logworth_floor = 1.3;
  double drop_ratio = 0.5;

  static RetentionRule total() { return {4, 1.3, 0.5}; }
  static RetentionRule mechanism() { return {3, 1.3, 0.5}; }
};

struct ScreeningResult {
  std::string output_name;
  /// Sorted by descending logworth, ties in input order.
  std::vector<ScreeningEntry> entries;
  std::vector<std::string> retained;

  const ScreeningEntry& find(std::string_view name) const;
};

/// Logworth of an adjusted p-value; p is floored at 1e-300.
double logworth(double p);

/// Per-column simple-regression slope t-tests, Benjamini-Hochberg adjusted
/// across all columns. Requires at least 30 rows.
ScreeningResult screen_fdr_logworth(std::span<const std::vector<double>> columns,
                                    std::span<const std::string> names, std::span<const double> y,
                                    std::string output_name, const RetentionRule& rule = {});

/// Screens all 41 catalog parameters of a dataset against one output.
ScreeningResult screen_fdr_logworth(const Dataset& dataset, Output output, const RetentionRule& rule = {});

std::vector<std::string> retain_parameters(const ScreeningResult& screening, const RetentionRule& rule);

void save_screening_csv(const ScreeningResult& screening, const std::filesystem::path& path);

// -------------------------------------------------------------------- Sobol

struct SobolEntry {
  std::string name;
  double S1 = 0.0;
  double ST = 0.0;
  double S1_stderr = 0.0;
  double ST_stderr = 0.0;
};

struct SobolResult {
  std::vector<SobolEntry> entries;  // input order
  std::size_t n_base = 0;
  std::size_t evaluations_used = 0;
  double variance = 0.0;
  /// Zero output variance: indices are undefined (NaN).
  bool degenerate = false;

  /// Names ordered by descending total-order index, ties in input order.
  std::vector<std::string> ranking() const;
};

struct SobolOptions {
  std::size_t n_base = 8192;
  std::uint64_t seed = 0;
  std::size_t bootstrap = 100;
  std::size_t threads = 1;
};

/// Model on the unit cube [0,1)^dim; must be safe to call concurrently.
using UnitModel = std::function<double(std::span<const double>)>;
/// Model on physical catalog parameters.
using ParamModel = std::function<double(const ParamVector&)>;

/// First- and total-order indices from Jansen estimators on a Saltelli
/// design built from a randomly shifted Sobol' sequence; V pools the A and B evaluations.
SobolResult sobol_indices(const UnitModel& model, std::span<const std::string> names,
                          const SobolOptions& options);

/// Catalog overload: unit coordinates are mapped through dist.
SobolResult sobol_indices(const ParamModel& model, const SamplingDistribution& dist,
                          const SobolOptions& options);

struct SobolConvergence {
  SobolResult small;
  SobolResult large;
  std::vector<std::string> top_small;
  std::vector<std::string> top_large;
  bool ranking_stable = false;
  double max_abs_delta_s1 = 0.0;
};

SobolConvergence sobol_convergence(const UnitModel& model, std::span<const std::string> names,
                                   std::size_t n_small, std::size_t n_large, std::size_t top_k,
                                   const SobolOptions& options);
SobolConvergence sobol_convergence(const ParamModel& model, const SamplingDistribution& dist,
                                   std::size_t n_small, std::size_t n_large, std::size_t top_k,
                                   const SobolOptions& options);

void save_sobol_csv(const SobolResult& result, const std::filesystem::path& path);

}  // namespace srdsm
