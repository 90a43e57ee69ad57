#include "srdsm/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/normal.hpp>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"

namespace srdsm {

std::string_view to_string(ParamGroup group) {
  switch (group) {
    case ParamGroup::metal: return "metal";
    case ParamGroup::resin_cohesive: return "resin_cohesive";
    case ParamGroup::resin_interface: return "resin_interface";
    case ParamGroup::lamina_EBX1200: return "lamina_EBX1200";
    case ParamGroup::lamina_ELT1800: return "lamina_ELT1800";
    case ParamGroup::lamina_H7500: return "lamina_H7500";
    case ParamGroup::lamina_H7781: return "lamina_H7781";
    case ParamGroup::lamina_shear_shared: return "lamina_shear_shared";
  }
  return "unknown";
}

ParameterCatalog ParameterCatalog::build() {
  using G = ParamGroup;
  std::vector<ParameterSpec> specs{
      // aluminum 5456-H116
      {"E", 10.1, "msi", G::metal},
      {"nu", 0.29, "-", G::metal},
      {"A", 29.8, "ksi", G::metal},
      {"B", 103.6, "ksi", G::metal},
      {"Aln", 0.607, "-", G::metal},
      // resin M1002/M2046 between plies
      {"EC", 10.0, "msi", G::resin_cohesive},
      {"XT", 7.6, "ksi", G::resin_cohesive},
      {"XS", 4.9, "ksi", G::resin_cohesive},
      {"GI", 7.6, "lbf-in/in^2", G::resin_cohesive},
      {"GII", 16.6, "lbf-in/in^2", G::resin_cohesive},
      {"BK", 2.6, "-", G::resin_cohesive},
      // same resin at the composite/metal interface
      {"EiC", 10.0, "msi", G::resin_interface},
      {"XiT", 7.6, "ksi", G::resin_interface},
      {"XiS", 4.9, "ksi", G::resin_interface},
      {"GiI", 7.6, "lbf-in/in^2", G::resin_interface},
      {"GiII", 16.6, "lbf-in/in^2", G::resin_interface},
      {"BiK", 2.6, "-", G::resin_interface},
      // lamina plies
      {"E1200", 2.8, "msi", G::lamina_EBX1200},
      {"X1200", 53.0, "ksi", G::lamina_EBX1200},
      {"V1200", 0.15, "-", G::lamina_EBX1200},
      {"G1200", 150.0, "lbs/in", G::lamina_EBX1200},
      {"E1800", 2.8, "msi", G::lamina_ELT1800},
      {"X1800", 53.0, "ksi", G::lamina_ELT1800},
      {"V1800", 0.15, "-", G::lamina_ELT1800},
      {"G1800", 150.0, "lbs/in", G::lamina_ELT1800},
      {"E7500", 2.83, "msi", G::lamina_H7500},
      {"X7500", 46.7, "ksi", G::lamina_H7500},
      {"V7500", 0.15, "-", G::lamina_H7500},
      {"G7500", 100.0, "lbs/in", G::lamina_H7500},
      {"E7781", 4.4, "msi", G::lamina_H7781},
      {"X7781", 70.0, "ksi", G::lamina_H7781},
      {"V7781", 0.15, "-", G::lamina_H7781},
      {"G7781", 100.0, "lbs/in", G::lamina_H7781},
      // shear properties shared by all plies
      {"GS", 0.8, "msi", G::lamina_shear_shared},
      {"SS", 5.16, "ksi", G::lamina_shear_shared},
      {"alpha12", 0.2767, "-", G::lamina_shear_shared},
      {"d12", 0.714, "-", G::lamina_shear_shared},
      {"epsilon", 0.02, "-", G::lamina_shear_shared},
      {"sigmaY", 5.16, "ksi", G::lamina_shear_shared},
      {"C", 0.65, "msi", G::lamina_shear_shared},
      {"P", 0.729, "-", G::lamina_shear_shared},
  };
  return ParameterCatalog(std::move(specs));
}

ParameterCatalog::ParameterCatalog(std::vector<ParameterSpec> specs) : specs_(std::move(specs)) {
  if (specs_.size() != kParamCount) fail(ErrorCode::invalid_argument, "catalog must hold 41 parameters");
  std::set<std::string> seen;
  for (const auto& s : specs_) {
    if (!seen.insert(s.name).second) fail(ErrorCode::invalid_argument, "duplicate parameter " + s.name);
    if (!(s.mean > 0.0)) fail(ErrorCode::invalid_argument, "non-positive mean for " + s.name);
  }
}

const ParameterCatalog& ParameterCatalog::instance() {
  static const ParameterCatalog cat = build();
  return cat;
}

std::optional<std::size_t> ParameterCatalog::find(std::string_view name) const {
  if (name == "n") name = "Aln";
  for (std::size_t i = 0; i < specs_.size(); ++i)
    if (specs_[i].name == name) return i;
  return std::nullopt;
}

std::size_t ParameterCatalog::index_of(std::string_view name) const {
  const auto idx = find(name);
  if (!idx) fail(ErrorCode::invalid_argument, "unknown parameter '" + std::string(name) + "'");
  return *idx;
}

const ParameterSpec& ParameterCatalog::at(std::string_view name) const {
  return specs_[index_of(name)];
}

ParamVector ParameterCatalog::means() const {
  ParamVector m{};
  for (std::size_t i = 0; i < kParamCount; ++i) m[i] = specs_[i].mean;
  return m;
}

std::vector<std::size_t> ParameterCatalog::indices_of(std::span<const std::string> names) const {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(index_of(n));
  return out;
}

// ---------------------------------------------------------------------------

SamplingDistribution SamplingDistribution::uniform_custom(double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) fail(ErrorCode::invalid_argument, "uniform_custom requires 0 < lo < hi");
  return {Kind::uniform_custom, lo, hi};
}

SamplingDistribution SamplingDistribution::normal_custom(double mean_factor, double std_factor) {
  if (!(std_factor > 0.0)) fail(ErrorCode::invalid_argument, "normal_custom requires std > 0");
  return {Kind::normal_custom, mean_factor, std_factor};
}

double SamplingDistribution::lower(std::size_t i) const {
  if (!bounded()) fail(ErrorCode::invalid_argument, "distribution '" + tag() + "' has unbounded support");
  return a * catalog()[i].mean;
}

double SamplingDistribution::upper(std::size_t i) const {
  if (!bounded()) fail(ErrorCode::invalid_argument, "distribution '" + tag() + "' has unbounded support");
  return b * catalog()[i].mean;
}

double SamplingDistribution::from_unit(std::size_t i, double u) const {
  const double mean = catalog()[i].mean;
  if (bounded()) return mean * (a + u * (b - a));
  static const boost::math::normal_distribution<double> standard;
  return mean * (a + b * boost::math::quantile(standard, u));
}

std::string SamplingDistribution::tag() const {
  switch (kind) {
    case Kind::uniform_pm20: return "uniform_pm20";
    case Kind::normal_10std: return "normal_10std";
    case Kind::uniform_custom: return "uniform_custom(" + csv::format(a) + "," + csv::format(b) + ")";
    case Kind::normal_custom: return "normal_custom(" + csv::format(a) + "," + csv::format(b) + ")";
  }
  return "unknown";
}

SamplingDistribution SamplingDistribution::parse(std::string_view tag) {
  if (tag == "uniform_pm20") return uniform_pm20();
  if (tag == "normal_10std") return normal_10std();
  const auto open = tag.find('(');
  const auto comma = tag.find(',');
  const auto close = tag.find(')');
  if (open != tag.npos && comma != tag.npos && close == tag.size() - 1 && open < comma && comma < close) {
    const auto head = tag.substr(0, open);
    const double p = csv::parse_cell(tag.substr(open + 1, comma - open - 1), 0, "distribution");
    const double q = csv::parse_cell(tag.substr(comma + 1, close - comma - 1), 0, "distribution");
    if (head == "uniform_custom") return uniform_custom(p, q);
    if (head == "normal_custom") return normal_custom(p, q);
  }
  fail(ErrorCode::invalid_argument, "unknown distribution '" + std::string(tag) + "'");
}

double normalize_one(std::size_t i, double value, const SamplingDistribution& dist) {
  const double lo = dist.lower(i);
  const double hi = dist.upper(i);
  // allow round-off at the bounds
  const double slack = 1e-12 * (hi - lo);
  if (!(value >= lo - slack && value <= hi + slack)) {
    fail(ErrorCode::out_of_range, "parameter '" + catalog()[i].name + "' value " + csv::format(value) +
                                      " outside support [" + csv::format(lo) + ", " + csv::format(hi) + "]");
  }
  return std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
}

ParamVector normalize(const ParamVector& x, const SamplingDistribution& dist) {
  ParamVector u{};
  for (std::size_t i = 0; i < kParamCount; ++i) u[i] = normalize_one(i, x[i], dist);
  return u;
}

ParamVector denormalize(const ParamVector& u, const SamplingDistribution& dist) {
  ParamVector x{};
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const double lo = dist.lower(i);
    const double hi = dist.upper(i);
    x[i] = lo + u[i] * (hi - lo);
  }
  return x;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Output output) {
  switch (output) {
    case Output::PL: return "PL";
    case Output::DL: return "DL";
    case Output::DC: return "DC";
    case Output::DI: return "DI";
    case Output::PM: return "PM";
    case Output::TS: return "TS";
  }
  return "?";
}

Output parse_output(std::string_view name) {
  for (Output o : kOutputs)
    if (to_string(o) == name) return o;
  fail(ErrorCode::invalid_argument, "unknown output '" + std::string(name) + "'");
}

EnergyVector EnergyVector::from_mechanisms(double pl, double dl, double dc, double di, double pm) {
  EnergyVector e{pl, dl, dc, di, pm, 0.0};
  e.TS = e.mechanism_sum();
  return e;
}

double EnergyVector::get(Output output) const {
  switch (output) {
    case Output::PL: return PL;
    case Output::DL: return DL;
    case Output::DC: return DC;
    case Output::DI: return DI;
    case Output::PM: return PM;
    case Output::TS: return TS;
  }
  return 0.0;
}

std::vector<double> Dataset::column(std::size_t param) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.x[param]);
  return out;
}

std::vector<double> Dataset::output(Output o) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.energy.get(o));
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
  Dataset out{provenance, origin, {}};
  out.rows.reserve(row_indices.size());
  for (std::size_t i : row_indices) out.rows.push_back(rows.at(i));
  return out;
}

std::vector<std::string> dataset_header() {
  std::vector<std::string> header;
  for (const auto& s : catalog().specs()) header.push_back(s.name);
  for (Output o : kOutputs) header.emplace_back(to_string(o));
  return header;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  const csv::Table table = csv::read(path);
  const auto expected = dataset_header();

  std::map<std::string, std::size_t> position;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (std::find(expected.begin(), expected.end(), name) == expected.end())
      fail(ErrorCode::schema_mismatch, "column " + std::to_string(c + 1) + ": unexpected column '" + name + "'");
    if (!position.emplace(name, c).second)
      fail(ErrorCode::schema_mismatch, "column " + std::to_string(c + 1) + ": duplicate column '" + name + "'");
  }
  for (const auto& name : expected)
    if (!position.count(name)) fail(ErrorCode::schema_mismatch, "missing column '" + name + "'");

  Dataset ds;
  ds.provenance = Provenance::external_csv;
  ds.origin = "csv:" + path.filename().string();
  ds.rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::size_t line = r + 2;
    if (cells.size() != table.header.size())
      fail(ErrorCode::parse_error, "row " + std::to_string(line) + ": expected " +
                                       std::to_string(table.header.size()) + " cells, found " +
                                       std::to_string(cells.size()));
    DatasetRow row;
    row.id = r;
    for (std::size_t i = 0; i < kParamCount; ++i) {
      const auto& name = expected[i];
      row.x[i] = csv::parse_cell(cells[position[name]], line, name);
    }
    std::array<double, 6> e{};
    for (std::size_t k = 0; k < 6; ++k) {
      const auto& name = expected[kParamCount + k];
      e[k] = csv::parse_cell(cells[position[name]], line, name);
    }
    row.energy = EnergyVector{e[0], e[1], e[2], e[3], e[4], e[5]};
    ds.rows.push_back(row);
  }
  return ds;
}

void save_dataset_csv(const Dataset& dataset, const std::filesystem::path& path) {
  csv::Table table;
  table.header = dataset_header();
  table.rows.reserve(dataset.rows.size());
  for (const auto& r : dataset.rows) {
    std::vector<std::string> cells;
    cells.reserve(kParamCount + 6);
    for (double v : r.x) cells.push_back(csv::format(v));
    for (Output o : kOutputs) cells.push_back(csv::format(r.energy.get(o)));
    table.rows.push_back(std::move(cells));
  }
  csv::write(path, table);
}

}  // namespace srdsm
