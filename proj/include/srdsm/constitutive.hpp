#pragma once

namespace srdsm {

// Johnson-Cook strain hardening of the metal substrate.
double jc_stress(double eps_p, double A, double B, double n);
/// Closed-form plastic work density: A*eps + B*eps^(n+1)/(n+1).
double jc_plastic_work(double eps_p, double A, double B, double n);

/// In-plane stress triple in lamina material axes (11, 22, 12).
struct PlaneStress {
  double s11 = 0.0;
  double s22 = 0.0;
  double s12 = 0.0;
};

/// Effective (undamaged) stress under strain equivalence: s_ij / (1 - d_ij).
/// Throws singularity when any damage equals 1.
PlaneStress cdm_effective_stress(const PlaneStress& sigma, double d11, double d22, double d12);

enum class Direction { none, d11, d22, d12 };

/// First direction (11, 22, 12 order) whose |effective stress| / strength reaches 1.
Direction cdm_initiation(const PlaneStress& effective, double X11, double X22, double X12);

/// Elastic energy density at fiber damage initiation, X^2 / (2E).
inline double cdm_initiation_energy(double X, double E) { return X * X / (2.0 * E); }

/// Exponential fiber damage evolution for k = effective stress / strength >= 1.
/// Throws admissibility when G_f - U_0 * L_c <= 0.
double cdm_damage_evolution(double k, double X, double E, double G_f, double L_c);

/// Shear damage alpha12 * ln(k12), clamped to [0, d12_max].
double cdm_shear_damage(double k12, double alpha12, double d12_max);
/// Ludwik-Hollomon shear hardening: sigmaY + C * eps^P.
double cdm_shear_hardening(double eps12_p, double sigmaY, double C, double P);
/// Integral of the hardening curve from 0 to eps12_p.
double cdm_shear_plastic_work(double eps12_p, double sigmaY, double C, double P);

/// Triangular traction-separation law.
class CohesiveLaw {
 public:
  /// Throws invalid_argument for non-positive inputs and admissibility when
  /// the failure separation 2*Gc/t0 does not exceed the onset t0/K.
  CohesiveLaw(double K, double t0, double Gc);

  double stiffness() const { return K_; }
  double peak_traction() const { return t0_; }
  double fracture_energy() const { return Gc_; }
  double onset_separation() const { return delta0_; }
  double failure_separation() const { return deltaf_; }

  /// Traction on the monotone loading envelope.
  double envelope(double delta) const;
  /// Traction with unloading along the damaged secant through the origin.
  double traction(double delta, double delta_max) const;
  /// Scalar damage for a given maximum separation, in [0, 1].
  double damage(double delta_max) const;
  /// Energy per unit area dissipated once the separation has reached delta_max.
  double dissipated(double delta_max) const;

 private:
  double K_, t0_, Gc_, delta0_, deltaf_;
};

/// Loading-envelope traction (convenience wrapper over CohesiveLaw).
double czm_traction(double delta, double K, double t0, double Gc);

/// Quadratic stress criterion value; compressive Mode I traction contributes 0.
double czm_initiation_index(double tI, double tII, double tIII, double tI0, double tII0, double tIII0);
bool czm_initiation(double tI, double tII, double tIII, double tI0, double tII0, double tIII0);

/// Benzeggagh-Kenane mixed-mode critical energy release rate.
double bk_mixed_mode_gc(double GI, double GII, double GIII, double GIc, double GIIc, double n_bk);

}  // namespace srdsm
