#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "srdsm/param_space.hpp"

namespace srdsm {

enum class Scheme { mc, lhs, lss, saltelli_A, saltelli_B, saltelli_ABi };

/// Row-major n x dim design in the unit cube.
class DesignMatrix {
 public:
  DesignMatrix(std::size_t n_samples, std::size_t dim, Scheme scheme, std::size_t column = 0);

  std::size_t n_samples() const { return n_; }
  std::size_t dim() const { return dim_; }
  Scheme scheme() const { return scheme_; }
  /// Spliced column for saltelli_ABi designs.
  std::size_t spliced_column() const { return column_; }

  double& operator()(std::size_t row, std::size_t col) { return values_[row * dim_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * dim_ + col]; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * dim_, dim_}; }
  std::vector<double> column(std::size_t c) const;
  std::span<const double> values() const { return values_; }

 private:
  std::size_t n_;
  std::size_t dim_;
  Scheme scheme_;
  std::size_t column_;
  std::vector<double> values_;
};

DesignMatrix sample_mc(std::size_t n, std::size_t dim, std::uint64_t seed);
DesignMatrix sample_lhs(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Latin stratified sampling.
///
/// Each dimension is cut into n fine strata grouped into strata_per_dim coarse
/// strata. Every fine stratum holds exactly one point (Latin marginals) and the
/// coarse labels are assigned with a cyclic-shift construction so that points
/// spread evenly over coarse cells; with strata_per_dim == n this is plain LHS.
DesignMatrix sample_lss(std::size_t n, std::size_t dim, std::uint64_t seed, std::size_t strata_per_dim);

/// Largest divisor of n not exceeding floor(sqrt(n)).
std::size_t default_strata(std::size_t n);

struct SaltelliDesign {
  DesignMatrix A;
  DesignMatrix B;
  std::vector<DesignMatrix> AB;  // AB[i]: A with column i taken from B

  std::size_t evaluations() const { return A.n_samples() * (AB.size() + 2); }
};

/// A and B are the two halves of a randomly shifted 2*dim Sobol' sequence.
SaltelliDesign saltelli_matrices(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Maps a 41-column unit design row to physical parameter values.
ParamVector to_physical(std::span<const double> unit_row, const SamplingDistribution& dist);

/// Writes a 41-column design as CSV with catalog headers, either in unit
/// coordinates or mapped through dist.
void save_design_csv(const DesignMatrix& design, const SamplingDistribution& dist, bool physical,
                     const std::filesystem::path& path);

}  // namespace srdsm
