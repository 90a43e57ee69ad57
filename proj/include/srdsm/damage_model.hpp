#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "srdsm/param_space.hpp"
#include "srdsm/sampling.hpp"

namespace srdsm {

enum class PlyType { EBX1200, ELT1800, H7500, H7781 };

std::string_view to_string(PlyType type);
PlyType parse_ply_type(std::string_view name);
/// E-BX 1200 is a +/-45 stitched fabric; the others are 0/90 fabrics.
bool is_bias_ply(PlyType type);

/// Four-point-bend specimen for the constant-moment region.
///
/// Coordinates: y = 0 at the composite/metal interface, metal above (y > 0),
/// composite below. Positive curvature puts the composite in tension.
/// Lengths in inches, curvature in 1/in.
struct BendSpecimen {
  double width = 0.9;
  double moment_span = 3.5;
  double metal_thickness = 0.4;
  std::size_t metal_points = 10;
  double ply_thickness = 0.16 / 12.0;
  /// Ply order from the metal interface outward.
  std::vector<PlyType> stacking;
  double characteristic_length = 0.0;
  /// Reference axis of the linear strain field, fixed at the elastic
  /// transformed-section centroid for catalog means.
  double neutral_axis = 0.0;
  double kappa_max = 0.0;
  std::size_t steps = 200;

  // Separation drivers. A cohesive layer opens by
  //   delta = cohesive_gain * |axial stress jump| / K,   K = EC / L_c
  // with Mode I share cohesive_mode_I_ratio of the shear separation; the
  // shear separation splits evenly between Modes II and III.
  double cohesive_gain = 3.0;
  double cohesive_mode_I_ratio = 0.2;
  // The interface opens by interface_gain * demand / K_i, where demand is
  //   jump_weight * |metal stress - adjacent ply stress|
  //   + shed_weight * (mean plastic relaxation of bias plies)
  //                 * (smallest residual stiffness among the cohesive layers).
  // The interface gain is set so that disbond reaches 3% of total energy in
  // roughly a tenth of the sampled support.
  double interface_gain = 600.0;
  double interface_jump_weight = 0.0;
  double interface_shed_weight = 1.0;

  static BendSpecimen default_specimen();
  static BendSpecimen from_json(std::string_view text);
  static BendSpecimen load(const std::filesystem::path& path);
  std::string to_json() const;

  double composite_thickness() const { return ply_thickness * static_cast<double>(stacking.size()); }
  double area() const { return width * moment_span; }

  /// Rejects non-physical geometry and a characteristic length that violates
  /// G_f - U_0 * L_c > 0 for any ply at x (error names the ply).
  void validate(const ParamVector& x) const;
};

/// Elastic transformed-section centroid for properties x.
double section_neutral_axis(const ParamVector& x, const BendSpecimen& specimen);

/// Largest L_c admissible over the +/-20% support (strength and modulus at
/// their worst corners), divided by safety_factor.
double default_characteristic_length(double safety_factor = 2.0);
/// Curvature that takes the outermost ply to `factor` times its fiber
/// initiation strain at catalog means.
double default_kappa_max(const BendSpecimen& specimen, double factor = 1.5);

struct LaminaPointState {
  double d11 = 0.0;
  double d22 = 0.0;
  double d12 = 0.0;
  double eps12_p = 0.0;
  bool failed = false;
};

struct CohesivePointState {
  double delta_max = 0.0;
  double damage = 0.0;
  double dissipated = 0.0;  // lbf-in over the tributary area
};

struct MetalPointState {
  double eps_p = 0.0;
  double dissipated = 0.0;  // plastic work density, ksi
};

/// Drives every material point through the curvature schedule.
class BendSimulation {
 public:
  BendSimulation(const ParamVector& x, const BendSpecimen& specimen);

  /// Advances one curvature increment; false once the schedule is complete.
  bool step();
  void run();

  std::size_t step_index() const { return step_; }
  double curvature() const;
  double neutral_axis() const { return y_na_; }

  const std::vector<LaminaPointState>& plies() const { return plies_; }
  const std::vector<CohesivePointState>& cohesive_layers() const { return cohesive_; }
  const CohesivePointState& interface_layer() const { return interface_; }
  const std::vector<MetalPointState>& metal() const { return metal_; }

  EnergyVector energies() const;

 private:
  struct PlyProps {
    PlyType type;
    double E, X, nu, G_f, y;
    double pl_work = 0.0;  // ksi
    double dl_work = 0.0;  // ksi
    double y11 = 0.0, y22 = 0.0, y12 = 0.0;  // previous energy release rates
    double sigma_x = 0.0;
    double relaxation = 0.0;
  };

  void update_metal(double kappa);
  void update_plies(double kappa);
  void update_cohesive();
  void update_interface(double kappa);
  double metal_stress_at_interface(double kappa) const;

  const BendSpecimen& spec_;
  ParamVector x_;
  double L_c_;
  double y_na_ = 0.0;
  std::size_t step_ = 0;

  std::vector<double> metal_y_;
  std::vector<MetalPointState> metal_;
  std::vector<PlyProps> props_;
  std::vector<LaminaPointState> plies_;
  std::vector<CohesivePointState> cohesive_;
  CohesivePointState interface_;
};

/// Runs the full schedule; deterministic in (x, specimen).
EnergyVector simulate_bend(const ParamVector& x, const BendSpecimen& specimen);

/// Evaluates many inputs; rows are independent and may be split across threads.
std::vector<EnergyVector> simulate_batch(const std::vector<ParamVector>& xs, const BendSpecimen& specimen,
                                         unsigned threads = 1);

/// Runs the source model on every row of a 41-column unit design.
Dataset simulate_design(const DesignMatrix& design, const BendSpecimen& specimen, const SamplingDistribution& dist,
                        unsigned threads, std::uint64_t first_id, std::string origin);

/// Samples n inputs with a Monte Carlo unit design and distribution and runs the
/// source model on each.
Dataset generate_dataset(std::size_t n, std::uint64_t seed, const BendSpecimen& specimen,
                         const SamplingDistribution& dist = SamplingDistribution::uniform_pm20(),
                         unsigned threads = 1, std::uint64_t first_id = 0);

}  // namespace srdsm
