#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "srdsm/gate.hpp"
#include "srdsm/param_space.hpp"
#include "srdsm/rdsm.hpp"
#include "srdsm/sensitivity.hpp"
#include "srdsm/surrogate.hpp"

namespace srdsm {

/// Pipeline settings. Built-in defaults are overridden by a JSON config
/// file, which is overridden by command-line flags.
struct RunConfig {
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  std::string output_dir;  // empty: $SRDSM_OUTPUT_DIR, else "srdsm_out"
  std::string specimen;    // empty: built-in default specimen
  std::string dataset;
  std::string validation;
  std::string distribution = "uniform_pm20";

  std::string scheme = "mc";  // mc | lhs | lss
  std::size_t strata = 0;     // lss coarse strata per dimension; 0 = automatic
  std::size_t samples = 1555;

  std::array<NetworkSpec, 6> networks{};  // indexed like kOutputs
  RetentionRule retention_total = RetentionRule::total();
  RetentionRule retention_mechanism = RetentionRule::mechanism();
  EngagementGate gate;

  std::size_t subspace_count = 12;
  std::size_t subspace_samples = 3277;
  double engagement_threshold = kEngagementThreshold;
  std::size_t holdout = 25;
  std::size_t fresh_validation = 200;
  std::string query_mode = "reduced";

  std::size_t uq_samples = 5000;
  std::string uq_distribution = "normal_10std";
  std::size_t sobol_n_base = 10000;
  std::size_t sobol_bootstrap = 100;

  RunConfig();

  const NetworkSpec& network(Output output) const;
  NetworkSpec& network(Output output);

  /// Resolved output directory (config, then environment, then default).
  std::filesystem::path resolved_output_dir() const;

  std::string to_json() const;
  /// Applies the fields present in text on top of *this; unknown fields are
  /// rejected by name.
  void merge_json(std::string_view text);
  static RunConfig load(const std::filesystem::path& path);
};

/// Network seed for an output, derived from the run seed.
std::uint64_t network_seed(std::uint64_t run_seed, Output output);

}  // namespace srdsm
