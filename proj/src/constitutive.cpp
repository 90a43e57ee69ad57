#include "srdsm/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"

namespace srdsm {

double jc_stress(double eps_p, double A, double B, double n) {
  if (!(eps_p >= 0.0)) fail(ErrorCode::invalid_argument, "jc_stress: negative plastic strain");
  return A + B * std::pow(eps_p, n);
}

double jc_plastic_work(double eps_p, double A, double B, double n) {
  if (!(eps_p >= 0.0)) fail(ErrorCode::invalid_argument, "jc_plastic_work: negative plastic strain");
  return A * eps_p + B * std::pow(eps_p, n + 1.0) / (n + 1.0);
}

PlaneStress cdm_effective_stress(const PlaneStress& sigma, double d11, double d22, double d12) {
  for (double d : {d11, d22, d12}) {
    if (d < 0.0 || !std::isfinite(d)) fail(ErrorCode::invalid_argument, "damage must be in [0, 1)");
    if (d >= 1.0) fail(ErrorCode::singularity, "fully damaged point has no effective stress");
  }
  return {sigma.s11 / (1.0 - d11), sigma.s22 / (1.0 - d22), sigma.s12 / (1.0 - d12)};
}

Direction cdm_initiation(const PlaneStress& effective, double X11, double X22, double X12) {
  if (std::abs(effective.s11) / X11 >= 1.0) return Direction::d11;
  if (std::abs(effective.s22) / X22 >= 1.0) return Direction::d22;
  if (std::abs(effective.s12) / X12 >= 1.0) return Direction::d12;
  return Direction::none;
}

double cdm_damage_evolution(double k, double X, double E, double G_f, double L_c) {
  if (!(k >= 1.0)) fail(ErrorCode::invalid_argument, "cdm_damage_evolution: k must be >= 1");
  const double u0_lc = cdm_initiation_energy(X, E) * L_c;
  const double margin = G_f - u0_lc;
  if (!(margin > 0.0))
    fail(ErrorCode::admissibility, "characteristic length too large: G_f - U_0*L_c = " + csv::format(margin));
  return 1.0 - std::exp(-2.0 * u0_lc * (k - 1.0) / margin) / k;
}

double cdm_shear_damage(double k12, double alpha12, double d12_max) {
  if (!(k12 > 1.0)) return 0.0;
  return std::clamp(alpha12 * std::log(k12), 0.0, d12_max);
}

double cdm_shear_hardening(double eps12_p, double sigmaY, double C, double P) {
  if (!(eps12_p >= 0.0)) fail(ErrorCode::invalid_argument, "shear hardening: negative plastic strain");
  return sigmaY + C * std::pow(eps12_p, P);
}

double cdm_shear_plastic_work(double eps12_p, double sigmaY, double C, double P) {
  if (!(eps12_p >= 0.0)) fail(ErrorCode::invalid_argument, "shear plastic work: negative plastic strain");
  return sigmaY * eps12_p + C * std::pow(eps12_p, P + 1.0) / (P + 1.0);
}

CohesiveLaw::CohesiveLaw(double K, double t0, double Gc) : K_(K), t0_(t0), Gc_(Gc) {
  if (!(K > 0.0 && t0 > 0.0 && Gc > 0.0))
    fail(ErrorCode::invalid_argument, "cohesive law requires K, t0, Gc > 0");
  delta0_ = t0 / K;
  deltaf_ = 2.0 * Gc / t0;
  if (!(deltaf_ > delta0_))
    fail(ErrorCode::admissibility, "cohesive law: failure separation " + csv::format(deltaf_) +
                                       " does not exceed onset separation " + csv::format(delta0_));
}

double CohesiveLaw::envelope(double delta) const {
  if (!(delta >= 0.0)) fail(ErrorCode::invalid_argument, "cohesive separation must be >= 0");
  if (delta <= delta0_) return K_ * delta;
  if (delta >= deltaf_) return 0.0;
  return t0_ * (delta - deltaf_) / (delta0_ - deltaf_);
}

double CohesiveLaw::traction(double delta, double delta_max) const {
  const double reached = std::max(delta, delta_max);
  if (delta >= reached) return envelope(delta);
  return (1.0 - damage(reached)) * K_ * delta;
}

double CohesiveLaw::damage(double delta_max) const {
  if (delta_max <= delta0_) return 0.0;
  if (delta_max >= deltaf_) return 1.0;
  return deltaf_ * (delta_max - delta0_) / (delta_max * (deltaf_ - delta0_));
}

double CohesiveLaw::dissipated(double delta_max) const {
  if (delta_max <= delta0_) return 0.0;
  if (delta_max >= deltaf_) return Gc_;
  // loading area minus the energy recoverable along the secant
  return 0.5 * t0_ * (delta_max - delta0_ * (deltaf_ - delta_max) / (deltaf_ - delta0_));
}

double czm_traction(double delta, double K, double t0, double Gc) {
  return CohesiveLaw(K, t0, Gc).envelope(delta);
}

double czm_initiation_index(double tI, double tII, double tIII, double tI0, double tII0, double tIII0) {
  if (!(tI0 > 0.0 && tII0 > 0.0 && tIII0 > 0.0))
    fail(ErrorCode::invalid_argument, "initiation stresses must be > 0");
  const double a = std::max(tI, 0.0) / tI0;
  const double b = tII / tII0;
  const double c = tIII / tIII0;
  return a * a + b * b + c * c;
}

bool czm_initiation(double tI, double tII, double tIII, double tI0, double tII0, double tIII0) {
  // 1e-12 absorbs rounding in squared ratios on the boundary
  return czm_initiation_index(tI, tII, tIII, tI0, tII0, tIII0) >= 1.0 - 1e-12;
}

double bk_mixed_mode_gc(double GI, double GII, double GIII, double GIc, double GIIc, double n_bk) {
  if (GI < 0.0 || GII < 0.0 || GIII < 0.0)
    fail(ErrorCode::invalid_argument, "energy release rates must be >= 0");
  const double total = GI + GII + GIII;
  if (!(total > 0.0)) fail(ErrorCode::degenerate, "undefined mode mix: all energy release rates are zero");
  return GIc + (GIIc - GIc) * std::pow((GII + GIII) / total, n_bk);
}

}  // namespace srdsm
