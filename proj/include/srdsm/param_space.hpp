#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srdsm {

inline constexpr std::size_t kParamCount = 41;

enum class ParamGroup {
  metal,
  resin_cohesive,
  resin_interface,
  lamina_EBX1200,
  lamina_ELT1800,
  lamina_H7500,
  lamina_H7781,
  lamina_shear_shared,
};

std::string_view to_string(ParamGroup group);

struct ParameterSpec {
  std::string name;
  double mean;
  std::string units;
  ParamGroup group;
};

using ParamVector = std::array<double, kParamCount>;

/// The fixed, ordered 41-entry material parameter catalog.
///
/// Means are stored in the units of the source property tables (msi, ksi,
/// lbf-in/in^2, lbs/in or dimensionless). The ordering is the column order of
/// every dataset and design matrix in the project.
class ParameterCatalog {
 public:
  static const ParameterCatalog& instance();

  std::span<const ParameterSpec> specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  const ParameterSpec& operator[](std::size_t i) const { return specs_[i]; }

  /// Index by name; also accepts the alias "n" for the hardening exponent.
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  const ParameterSpec& at(std::string_view name) const;

  ParamVector means() const;
  std::vector<std::size_t> indices_of(std::span<const std::string> names) const;

  static ParameterCatalog build();

 private:
  explicit ParameterCatalog(std::vector<ParameterSpec> specs);
  std::vector<ParameterSpec> specs_;
};

inline const ParameterCatalog& catalog() { return ParameterCatalog::instance(); }

/// Per-parameter sampling law applied relative to each catalog mean.
///
/// uniform_custom(lo, hi) spans [lo*mean, hi*mean]; normal_custom(m, s) has
/// mean m*mean and standard deviation s*mean.
struct SamplingDistribution {
  enum class Kind { uniform_pm20, normal_10std, uniform_custom, normal_custom };

  Kind kind = Kind::uniform_pm20;
  double a = 0.8;
  double b = 1.2;

  static SamplingDistribution uniform_pm20() { return {Kind::uniform_pm20, 0.8, 1.2}; }
  static SamplingDistribution normal_10std() { return {Kind::normal_10std, 1.0, 0.1}; }
  static SamplingDistribution uniform_custom(double lo, double hi);
  static SamplingDistribution normal_custom(double mean_factor, double std_factor);

  bool bounded() const { return kind == Kind::uniform_pm20 || kind == Kind::uniform_custom; }

  /// Support bounds for parameter i (bounded kinds only).
  double lower(std::size_t i) const;
  double upper(std::size_t i) const;

  /// Maps a unit-cube coordinate u in (0,1) to a physical value of
  /// parameter i (inverse CDF).
  double from_unit(std::size_t i, double u) const;

  std::string tag() const;
  static SamplingDistribution parse(std::string_view tag);
};

/// Affine map onto [0,1]^41; throws out_of_range naming the parameter.
ParamVector normalize(const ParamVector& x, const SamplingDistribution& dist);
ParamVector denormalize(const ParamVector& u, const SamplingDistribution& dist);
double normalize_one(std::size_t i, double value, const SamplingDistribution& dist);

enum class Output { PL, DL, DC, DI, PM, TS };
inline constexpr std::array<Output, 5> kMechanisms{Output::PL, Output::DL, Output::DC,
                                                   Output::DI, Output::PM};
inline constexpr std::array<Output, 6> kOutputs{Output::PL, Output::DL, Output::DC,
                                                Output::DI, Output::PM, Output::TS};

std::string_view to_string(Output output);
Output parse_output(std::string_view name);

/// Dissipated energies in lbf-in. TS is the sum of the five mechanisms.
struct EnergyVector {
  double PL = 0.0;
  double DL = 0.0;
  double DC = 0.0;
  double DI = 0.0;
  double PM = 0.0;
  double TS = 0.0;

  static EnergyVector from_mechanisms(double pl, double dl, double dc, double di, double pm);
  double get(Output output) const;
  double mechanism_sum() const { return PL + DL + DC + DI + PM; }
};

enum class Provenance { toy_model, external_csv };

struct DatasetRow {
  std::uint64_t id = 0;
  ParamVector x{};
  EnergyVector energy{};
};

struct Dataset {
  Provenance provenance = Provenance::external_csv;
  std::string origin;  // identifies the source run; row ids are unique within it
  std::vector<DatasetRow> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  std::vector<double> column(std::size_t param) const;
  std::vector<double> output(Output output) const;

  Dataset subset(std::span<const std::size_t> row_indices) const;
};

std::vector<std::string> dataset_header();

Dataset load_dataset_csv(const std::filesystem::path& path);
void save_dataset_csv(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace srdsm
