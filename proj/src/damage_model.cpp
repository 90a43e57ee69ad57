#include "srdsm/damage_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "srdsm/constitutive.hpp"
#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sampling.hpp"

namespace srdsm {

namespace {

constexpr double kMsiToKsi = 1000.0;
constexpr double kLbfToKip = 1e-3;
constexpr double kKipToLbf = 1000.0;

struct PlyIndices {
  std::size_t E, X, V, G;
};

PlyIndices ply_indices(PlyType type) {
  const auto& cat = catalog();
  const std::string suffix(type == PlyType::EBX1200   ? "1200"
                           : type == PlyType::ELT1800 ? "1800"
                           : type == PlyType::H7500   ? "7500"
                                                      : "7781");
  return {cat.index_of("E" + suffix), cat.index_of("X" + suffix), cat.index_of("V" + suffix),
          cat.index_of("G" + suffix)};
}

struct MaterialIndices {
  std::size_t E, A, B, n;
  std::size_t EC, XT, XS, GI, GII, BK;
  std::size_t EiC, XiT, XiS, GiI, GiII, BiK;
  std::size_t GS, SS, alpha12, d12, epsilon, sigmaY, C, P;
};

const MaterialIndices& material_indices() {
  static const MaterialIndices idx = [] {
    const auto& c = catalog();
    return MaterialIndices{c.index_of("E"),     c.index_of("A"),      c.index_of("B"),     c.index_of("Aln"),
                           c.index_of("EC"),    c.index_of("XT"),     c.index_of("XS"),    c.index_of("GI"),
                           c.index_of("GII"),   c.index_of("BK"),     c.index_of("EiC"),   c.index_of("XiT"),
                           c.index_of("XiS"),   c.index_of("GiI"),    c.index_of("GiII"),  c.index_of("BiK"),
                           c.index_of("GS"),    c.index_of("SS"),     c.index_of("alpha12"), c.index_of("d12"),
                           c.index_of("epsilon"), c.index_of("sigmaY"), c.index_of("C"),   c.index_of("P")};
  }();
  return idx;
}

// Axial (x-direction) modulus of a ply in ksi.
double axial_modulus(PlyType type, double E, double nu, double G) {
  if (!is_bias_ply(type)) return E;
  return 4.0 / (2.0 / E + 1.0 / G - 2.0 * nu / E);
}


// Root of a strictly decreasing g on [lo, hi] with g(lo) >= 0 >= g(hi).
template <typename G, typename DG>
double solve_decreasing(G g, DG dg, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double gx = g(x);
    if (gx > 0.0) lo = x; else hi = x;
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) break;
    const double slope = dg(x);
    double next = (slope < 0.0 && std::isfinite(slope)) ? x - gx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-17) { x = next; break; }
    x = next;
  }
  return x;
}

// Uniaxial Johnson-Cook return: plastic strain reached at total strain |eps|.
double metal_plastic_strain(double abs_eps, double eps_p, double E, double A, double B, double n) {
  if (E * (abs_eps - eps_p) <= jc_stress(eps_p, A, B, n)) return eps_p;
  auto g = [&](double e) { return E * (abs_eps - e) - A - B * std::pow(e, n); };
  auto dg = [&](double e) { return -E - (e > 0.0 ? n * B * std::pow(e, n - 1.0) : INFINITY); };
  return std::max(eps_p, solve_decreasing(g, dg, eps_p, abs_eps));
}

}  // namespace

double section_neutral_axis(const ParamVector& x, const BendSpecimen& s) {
  const auto& m = material_indices();
  const double tm = s.metal_thickness;
  double num = x[m.E] * kMsiToKsi * tm * (0.5 * tm);
  double den = x[m.E] * kMsiToKsi * tm;
  for (std::size_t k = 0; k < s.stacking.size(); ++k) {
    const auto pi = ply_indices(s.stacking[k]);
    const double Ex = axial_modulus(s.stacking[k], x[pi.E] * kMsiToKsi, x[pi.V], x[m.GS] * kMsiToKsi);
    const double y = -(static_cast<double>(k) + 0.5) * s.ply_thickness;
    num += Ex * s.ply_thickness * y;
    den += Ex * s.ply_thickness;
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Specimen

std::string_view to_string(PlyType type) {
  switch (type) {
    case PlyType::EBX1200: return "EBX1200";
    case PlyType::ELT1800: return "ELT1800";
    case PlyType::H7500: return "H7500";
    case PlyType::H7781: return "H7781";
  }
  return "?";
}

PlyType parse_ply_type(std::string_view name) {
  for (PlyType t : {PlyType::EBX1200, PlyType::ELT1800, PlyType::H7500, PlyType::H7781})
    if (to_string(t) == name) return t;
  fail(ErrorCode::parse_error, "unknown ply type '" + std::string(name) + "'");
}

bool is_bias_ply(PlyType type) { return type == PlyType::EBX1200; }

double default_characteristic_length(double safety_factor) {
  const auto& cat = catalog();
  double best = INFINITY;
  for (PlyType t : {PlyType::EBX1200, PlyType::ELT1800, PlyType::H7500, PlyType::H7781}) {
    const auto pi = ply_indices(t);
    const double X = 1.2 * cat[pi.X].mean;
    const double E = 0.8 * cat[pi.E].mean * kMsiToKsi;
    const double G = 0.8 * cat[pi.G].mean * kLbfToKip;
    best = std::min(best, G / cdm_initiation_energy(X, E));
  }
  return best / safety_factor;
}

double default_kappa_max(const BendSpecimen& s, double factor) {
  if (s.stacking.empty()) fail(ErrorCode::invalid_argument, "specimen has no plies");
  const auto means = catalog().means();
  const PlyType outer = s.stacking.back();
  const auto pi = ply_indices(outer);
  const double fiber_strain = means[pi.X] / (means[pi.E] * kMsiToKsi);
  const double axial_strain = is_bias_ply(outer) ? 2.0 * fiber_strain / (1.0 - means[pi.V]) : fiber_strain;
  const double y_outer = -(static_cast<double>(s.stacking.size()) - 0.5) * s.ply_thickness;
  return factor * axial_strain / (s.neutral_axis - y_outer);
}

BendSpecimen BendSpecimen::default_specimen() {
  BendSpecimen s;
  using P = PlyType;
  s.stacking = {P::H7500,   P::ELT1800, P::ELT1800, P::EBX1200, P::EBX1200, P::ELT1800,
                P::ELT1800, P::EBX1200, P::EBX1200, P::ELT1800, P::ELT1800, P::H7781};
  s.characteristic_length = default_characteristic_length();
  s.neutral_axis = section_neutral_axis(catalog().means(), s);
  s.kappa_max = default_kappa_max(s);
  return s;
}

namespace {

const std::vector<std::string>& specimen_fields() {
  static const std::vector<std::string> fields{
      "version",          "width",          "moment_span",           "metal_thickness",
      "metal_points",     "ply_thickness",  "stacking",              "characteristic_length",
      "neutral_axis",     "kappa_max",        "steps",          "cohesive_gain",         "cohesive_mode_I_ratio",
      "interface_gain",   "interface_jump_weight", "interface_shed_weight"};
  return fields;
}

}  // namespace

BendSpecimen BendSpecimen::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("specimen config: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::parse_error, "specimen config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(specimen_fields().begin(), specimen_fields().end(), key) == specimen_fields().end())
      fail(ErrorCode::schema_mismatch, "specimen config: unknown field '" + key + "'");
  if (j.value("version", 1) != 1) fail(ErrorCode::schema_mismatch, "specimen config: unsupported version");

  BendSpecimen s = default_specimen();
  try {
    s.width = j.value("width", s.width);
    s.moment_span = j.value("moment_span", s.moment_span);
    s.metal_thickness = j.value("metal_thickness", s.metal_thickness);
    s.metal_points = j.value("metal_points", s.metal_points);
    s.ply_thickness = j.value("ply_thickness", s.ply_thickness);
    if (j.contains("stacking")) {
      s.stacking.clear();
      for (const auto& p : j.at("stacking")) s.stacking.push_back(parse_ply_type(p.get<std::string>()));
    }
    s.steps = j.value("steps", s.steps);
    s.cohesive_gain = j.value("cohesive_gain", s.cohesive_gain);
    s.cohesive_mode_I_ratio = j.value("cohesive_mode_I_ratio", s.cohesive_mode_I_ratio);
    s.interface_gain = j.value("interface_gain", s.interface_gain);
    s.interface_jump_weight = j.value("interface_jump_weight", s.interface_jump_weight);
    s.interface_shed_weight = j.value("interface_shed_weight", s.interface_shed_weight);
    // derived defaults follow any geometry overrides unless pinned explicitly
    s.characteristic_length = j.contains("characteristic_length") ? j.at("characteristic_length").get<double>()
                                                                  : default_characteristic_length();
    s.neutral_axis = j.contains("neutral_axis") ? j.at("neutral_axis").get<double>()
                                                : section_neutral_axis(catalog().means(), s);
    s.kappa_max = j.contains("kappa_max") ? j.at("kappa_max").get<double>() : default_kappa_max(s);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("specimen config: ") + e.what());
  }
  return s;
}

BendSpecimen BendSpecimen::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open specimen config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string BendSpecimen::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["width"] = width;
  j["moment_span"] = moment_span;
  j["metal_thickness"] = metal_thickness;
  j["metal_points"] = metal_points;
  j["ply_thickness"] = ply_thickness;
  j["stacking"] = nlohmann::json::array();
  for (PlyType t : stacking) j["stacking"].push_back(std::string(to_string(t)));
  j["characteristic_length"] = characteristic_length;
  j["neutral_axis"] = neutral_axis;
  j["kappa_max"] = kappa_max;
  j["steps"] = steps;
  j["cohesive_gain"] = cohesive_gain;
  j["cohesive_mode_I_ratio"] = cohesive_mode_I_ratio;
  j["interface_gain"] = interface_gain;
  j["interface_jump_weight"] = interface_jump_weight;
  j["interface_shed_weight"] = interface_shed_weight;
  return j.dump(2);
}

void BendSpecimen::validate(const ParamVector& x) const {
  if (!(width > 0 && moment_span > 0 && metal_thickness > 0 && ply_thickness > 0))
    fail(ErrorCode::invalid_argument, "specimen dimensions must be positive");
  if (metal_points == 0 || steps == 0 || stacking.empty())
    fail(ErrorCode::invalid_argument, "specimen needs metal points, plies and at least one step");
  if (!(characteristic_length > 0 && kappa_max > 0))
    fail(ErrorCode::invalid_argument, "characteristic length and kappa_max must be positive");
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (!(x[i] > 0.0) || !std::isfinite(x[i]))
      fail(ErrorCode::invalid_argument, "parameter '" + catalog()[i].name + "' must be finite and positive");
  for (std::size_t k = 0; k < stacking.size(); ++k) {
    const auto pi = ply_indices(stacking[k]);
    const double u0 = cdm_initiation_energy(x[pi.X], x[pi.E] * kMsiToKsi);
    const double margin = x[pi.G] * kLbfToKip - u0 * characteristic_length;
    if (!(margin > 0.0))
      fail(ErrorCode::admissibility, "ply " + std::to_string(k + 1) + " (" + std::string(to_string(stacking[k])) +
                                         "): G_f - U_0*L_c = " + csv::format(margin) + " <= 0");
  }
}

// ---------------------------------------------------------------------------
// Simulation

BendSimulation::BendSimulation(const ParamVector& x, const BendSpecimen& specimen)
    : spec_(specimen), x_(x), L_c_(specimen.characteristic_length) {
  spec_.validate(x_);
  const auto& m = material_indices();
  y_na_ = spec_.neutral_axis;

  metal_y_.resize(spec_.metal_points);
  metal_.resize(spec_.metal_points);
  for (std::size_t k = 0; k < spec_.metal_points; ++k)
    metal_y_[k] = spec_.metal_thickness * (static_cast<double>(k) + 0.5) / static_cast<double>(spec_.metal_points);

  props_.reserve(spec_.stacking.size());
  for (std::size_t k = 0; k < spec_.stacking.size(); ++k) {
    const auto pi = ply_indices(spec_.stacking[k]);
    PlyProps p{};
    p.type = spec_.stacking[k];
    p.E = x_[pi.E] * kMsiToKsi;
    p.X = x_[pi.X];
    p.nu = x_[pi.V];
    p.G_f = x_[pi.G] * kLbfToKip;
    p.y = -(static_cast<double>(k) + 0.5) * spec_.ply_thickness;
    props_.push_back(p);
  }
  plies_.resize(props_.size());
  cohesive_.resize(props_.size() > 0 ? props_.size() - 1 : 0);
  (void)m;
}

double BendSimulation::curvature() const {
  return spec_.kappa_max * static_cast<double>(step_) / static_cast<double>(spec_.steps);
}

void BendSimulation::run() {
  while (step()) {
  }
}

bool BendSimulation::step() {
  if (step_ >= spec_.steps) return false;
  ++step_;
  const double kappa = curvature();
  update_metal(kappa);
  update_plies(kappa);
  update_cohesive();
  update_interface(kappa);
  return true;
}

void BendSimulation::update_metal(double kappa) {
  const auto& m = material_indices();
  const double E = x_[m.E] * kMsiToKsi;
  const double A = x_[m.A], B = x_[m.B], n = x_[m.n];
  for (std::size_t k = 0; k < metal_.size(); ++k) {
    const double eps = std::abs(kappa * (y_na_ - metal_y_[k]));
    auto& st = metal_[k];
    const double next = metal_plastic_strain(eps, st.eps_p, E, A, B, n);
    if (next > st.eps_p) {
      st.dissipated += jc_plastic_work(next, A, B, n) - jc_plastic_work(st.eps_p, A, B, n);
      st.eps_p = next;
    }
    if (!std::isfinite(st.dissipated))
      fail(ErrorCode::numerical_failure, "metal point " + std::to_string(k) + ": non-finite plastic work");
  }
}

double BendSimulation::metal_stress_at_interface(double kappa) const {
  const auto& m = material_indices();
  const double E = x_[m.E] * kMsiToKsi;
  const double eps = std::abs(kappa * y_na_);
  const double eps_p = metal_plastic_strain(eps, 0.0, E, x_[m.A], x_[m.B], x_[m.n]);
  return E * (eps - eps_p);
}

void BendSimulation::update_plies(double kappa) {
  const auto& m = material_indices();
  const double GS = x_[m.GS] * kMsiToKsi;
  const double SS = x_[m.SS];
  const double alpha12 = x_[m.alpha12];
  const double d12_max = x_[m.d12];
  const double eps_max = x_[m.epsilon];
  const double sigmaY = x_[m.sigmaY];
  const double C = x_[m.C] * kMsiToKsi;
  const double P = x_[m.P];

  for (std::size_t k = 0; k < props_.size(); ++k) {
    auto& p = props_[k];
    auto& st = plies_[k];
    if (st.failed) {
      p.sigma_x = 0.0;
      continue;
    }
    const double ex = kappa * (y_na_ - p.y);
    const double ey = -p.nu * ex;
    double e11 = ex, e22 = ey, e12 = 0.0;
    if (is_bias_ply(p.type)) {
      e11 = e22 = 0.5 * (ex + ey);
      e12 = 0.5 * (ex - ey);
    }
    const double q = p.E / (1.0 - p.nu * p.nu);
    const double s11 = q * (e11 + p.nu * e22);
    const double s22 = q * (e22 + p.nu * e11);

    // fiber damage, tension/compression symmetric
    auto fiber = [&](double s, double& d, double& y_prev) {
      const double y_now = s * s / (2.0 * p.E);
      const double k_ratio = std::abs(s) / p.X;
      if (k_ratio >= 1.0) {
        const double next = cdm_damage_evolution(k_ratio, p.X, p.E, p.G_f, L_c_);
        if (next > d) {
          p.dl_work += 0.5 * (y_prev + y_now) * (next - d);
          d = next;
        }
      }
      y_prev = y_now;
    };
    fiber(s11, st.d11, p.y11);
    fiber(s22, st.d22, p.y22);

    // matrix shear: Ludwik-Hollomon plasticity then logarithmic damage
    double s12 = 0.0;
    if (e12 != 0.0) {
      const double g = std::abs(e12);
      double trial = 2.0 * GS * (g - st.eps12_p);
      if (trial > cdm_shear_hardening(st.eps12_p, sigmaY, C, P)) {
        auto f = [&](double e) { return 2.0 * GS * (g - e) - sigmaY - C * std::pow(e, P); };
        auto df = [&](double e) { return -2.0 * GS - (e > 0.0 ? P * C * std::pow(e, P - 1.0) : INFINITY); };
        const double next = std::max(st.eps12_p, solve_decreasing(f, df, st.eps12_p, g));
        p.pl_work += 2.0 * (cdm_shear_plastic_work(next, sigmaY, C, P) -
                            cdm_shear_plastic_work(st.eps12_p, sigmaY, C, P));
        st.eps12_p = next;
        trial = 2.0 * GS * (g - st.eps12_p);
      }
      s12 = trial;
      p.relaxation = 2.0 * GS * g - s12;
      const double y_now = s12 * s12 / (2.0 * GS);
      const double d_next = std::max(st.d12, cdm_shear_damage(s12 / SS, alpha12, d12_max));
      if (d_next > st.d12) {
        p.pl_work += 0.5 * (p.y12 + y_now) * (d_next - st.d12);
        st.d12 = d_next;
      }
      p.y12 = y_now;
      if (st.eps12_p >= eps_max || st.d12 >= d12_max) st.failed = true;
      s12 = std::copysign(s12, e12);
    }

    const double n11 = (1.0 - st.d11) * s11;
    const double n22 = (1.0 - st.d22) * s22;
    p.sigma_x = is_bias_ply(p.type) ? 0.5 * (n11 + n22) + (1.0 - st.d12) * s12 : n11;
    if (st.failed) p.sigma_x = 0.0;
    if (!std::isfinite(p.sigma_x) || !std::isfinite(p.pl_work) || !std::isfinite(p.dl_work))
      fail(ErrorCode::numerical_failure, "ply point " + std::to_string(k) + ": non-finite state");
  }
}

void BendSimulation::update_cohesive() {
  const auto& m = material_indices();
  const double K = x_[m.EC] * kMsiToKsi / L_c_;
  const double fI = spec_.cohesive_mode_I_ratio;
  const double norm = std::sqrt(1.0 + fI * fI);
  const double bI = fI / norm;
  const double bII = 1.0 / (norm * std::sqrt(2.0));
  const double XT = x_[m.XT], XS = x_[m.XS];
  const double t0 = 1.0 / std::sqrt((bI / XT) * (bI / XT) + 2.0 * (bII / XS) * (bII / XS));
  const double Gc = bk_mixed_mode_gc(bI * bI, bII * bII, bII * bII, x_[m.GI] * kLbfToKip,
                                     x_[m.GII] * kLbfToKip, x_[m.BK]);
  const CohesiveLaw law(K, t0, Gc);
  const double area = spec_.area();
  for (std::size_t k = 0; k < cohesive_.size(); ++k) {
    const double jump = std::abs(props_[k].sigma_x - props_[k + 1].sigma_x);
    const double delta = spec_.cohesive_gain * jump / K * norm;
    auto& st = cohesive_[k];
    if (delta > st.delta_max) {
      st.delta_max = delta;
      st.damage = law.damage(delta);
      st.dissipated = law.dissipated(delta) * area * kKipToLbf;
    }
  }
}

void BendSimulation::update_interface(double kappa) {
  const auto& m = material_indices();
  const double K = x_[m.EiC] * kMsiToKsi / L_c_;
  // shear-only opening split evenly between Modes II and III
  const double t0 = x_[m.XiS];
  const double Gc = bk_mixed_mode_gc(0.0, 0.5, 0.5, x_[m.GiI] * kLbfToKip, x_[m.GiII] * kLbfToKip, x_[m.BiK]);
  const CohesiveLaw law(K, t0, Gc);

  double relax = 0.0;
  std::size_t bias = 0;
  for (const auto& p : props_)
    if (is_bias_ply(p.type)) {
      relax += p.relaxation;
      ++bias;
    }
  if (bias) relax /= static_cast<double>(bias);
  double residual = 1.0;
  if (!cohesive_.empty()) {
    for (const auto& c : cohesive_) residual = std::min(residual, 1.0 - c.damage);
  }
  const double jump = props_.empty() ? 0.0 : std::abs(metal_stress_at_interface(kappa) - props_.front().sigma_x);
  const double demand = spec_.interface_jump_weight * jump + spec_.interface_shed_weight * relax * residual;
  const double delta = spec_.interface_gain * demand / K;
  if (delta > interface_.delta_max) {
    interface_.delta_max = delta;
    interface_.damage = law.damage(delta);
    interface_.dissipated = law.dissipated(delta) * spec_.area() * kKipToLbf;
  }
  if (!std::isfinite(interface_.dissipated))
    fail(ErrorCode::numerical_failure, "interface point: non-finite dissipation");
}

EnergyVector BendSimulation::energies() const {
  const double area = spec_.area();
  double pm = 0.0;
  const double metal_volume = spec_.metal_thickness / static_cast<double>(metal_.size()) * area;
  for (const auto& st : metal_) pm += st.dissipated * metal_volume;
  double pl = 0.0, dl = 0.0;
  const double ply_volume = spec_.ply_thickness * area;
  for (const auto& p : props_) {
    pl += p.pl_work * ply_volume;
    dl += p.dl_work * ply_volume;
  }
  double dc = 0.0;
  for (const auto& c : cohesive_) dc += c.dissipated;
  return EnergyVector::from_mechanisms(pl * kKipToLbf, dl * kKipToLbf, dc, interface_.dissipated,
                                       pm * kKipToLbf);
}

EnergyVector simulate_bend(const ParamVector& x, const BendSpecimen& specimen) {
  BendSimulation sim(x, specimen);
  sim.run();
  return sim.energies();
}

std::vector<EnergyVector> simulate_batch(const std::vector<ParamVector>& xs, const BendSpecimen& specimen,
                                         unsigned threads) {
  std::vector<EnergyVector> out(xs.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(xs.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = simulate_bend(xs[i], specimen);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < xs.size(); i += threads) out[i] = simulate_bend(xs[i], specimen);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Dataset simulate_design(const DesignMatrix& design, const BendSpecimen& specimen, const SamplingDistribution& dist,
                        unsigned threads, std::uint64_t first_id, std::string origin) {
  const std::size_t n = design.n_samples();
  std::vector<ParamVector> xs;
  xs.reserve(n);
  for (std::size_t r = 0; r < n; ++r) xs.push_back(to_physical(design.row(r), dist));
  const auto energies = simulate_batch(xs, specimen, threads);
  Dataset ds;
  ds.provenance = Provenance::toy_model;
  ds.origin = std::move(origin);
  ds.rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) ds.rows.push_back({first_id + r, xs[r], energies[r]});
  return ds;
}

Dataset generate_dataset(std::size_t n, std::uint64_t seed, const BendSpecimen& specimen,
                         const SamplingDistribution& dist, unsigned threads, std::uint64_t first_id) {
  return simulate_design(sample_mc(n, kParamCount, seed), specimen, dist, threads, first_id,
                         "toy:seed=" + std::to_string(seed));
}

}  // namespace srdsm
