#include "srdsm/rdsm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"
#include "srdsm/parallel.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sampling.hpp"
#include "srdsm/stats.hpp"

namespace srdsm {

namespace {

std::size_t mechanism_slot(Output m) {
  switch (m) {
    case Output::PL: return 0;
    case Output::DL: return 1;
    case Output::DC: return 2;
    case Output::DI: return 3;
    case Output::PM: return 4;
    case Output::TS: break;
  }
  fail(ErrorCode::invalid_argument, "TS is not a mechanism");
}

Samples select_columns(const Dataset& ds, const std::vector<std::size_t>& idx) {
  Samples out;
  out.reserve(ds.size());
  for (const auto& r : ds.rows) {
    std::vector<double> v;
    v.reserve(idx.size());
    for (const auto i : idx) v.push_back(r.x[i]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> gather(const ParamVector& x, const std::vector<std::size_t>& idx) {
  std::vector<double> v;
  v.reserve(idx.size());
  for (const auto i : idx) v.push_back(x[i]);
  return v;
}

}  // namespace

NetworkSpec default_network(Output output) {
  NetworkSpec s;
  s.input_dim = kParamCount;
  switch (output) {
    case Output::TS:
    case Output::PM: s.hidden_layers = {60, 80}; break;
    case Output::PL: s.hidden_layers = {65, 70}; break;
    case Output::DL: s.hidden_layers = {55, 55}; break;
    case Output::DC: s.hidden_layers = {50}; break;
    case Output::DI:
      s.hidden_layers = {16, 16};
      s.learning_rate = 0.0015;
      s.train_fraction = 0.8;
      s.test_fraction = 0.2;
      break;
  }
  return s;
}

// ----------------------------------------------------------------- direct

std::string_view to_string(DirectQueryMode mode) {
  return mode == DirectQueryMode::reduced ? "reduced" : "full_frozen";
}

DirectQueryMode parse_query_mode(std::string_view name) {
  if (name == "reduced") return DirectQueryMode::reduced;
  if (name == "full_frozen") return DirectQueryMode::full_frozen;
  fail(ErrorCode::invalid_argument, "unknown query mode '" + std::string(name) + "' (expected reduced|full_frozen)");
}

double DirectRDSM::predict(const ParamVector& x) const {
  if (mode == DirectQueryMode::reduced) return forward(reduced, gather(x, indices));
  if (!full) fail(ErrorCode::invalid_argument, "direct RDSM has no 41-input surrogate for full_frozen queries");
  ParamVector q = baseline;
  for (const auto i : indices) q[i] = x[i];
  return forward(*full, std::vector<double>(q.begin(), q.end()));
}

DirectRDSM fit_direct(const Dataset& dataset, const DirectOptions& options) {
  if (dataset.size() < 100)
    fail(ErrorCode::invalid_argument, "direct fit needs at least 100 rows, got " + std::to_string(dataset.size()));
  DirectRDSM d;
  d.mode = options.mode;
  d.baseline = catalog().means();
  const auto y = dataset.output(Output::TS);

  if (options.train_full || options.mode == DirectQueryMode::full_frozen) {
    NetworkSpec spec = options.network;
    spec.input_dim = kParamCount;
    std::vector<std::size_t> all(kParamCount);
    std::iota(all.begin(), all.end(), std::size_t{0});
    d.full = train(spec, select_columns(dataset, all), y);
  }

  d.screening = screen_fdr_logworth(dataset, Output::TS, options.rule);
  d.retained = d.screening.retained;
  if (d.retained.empty()) fail(ErrorCode::degenerate, "no parameter is significant for TS");
  d.indices = catalog().indices_of(d.retained);

  NetworkSpec spec = options.network;
  spec.input_dim = d.indices.size();
  d.reduced = train(spec, select_columns(dataset, d.indices), y);
  return d;
}

// -------------------------------------------------------------- mechanism

MechanismOptions MechanismOptions::defaults(Output mechanism) {
  mechanism_slot(mechanism);
  return {default_network(mechanism), RetentionRule::mechanism()};
}

double MechanismRDSM::predict(const ParamVector& x) const { return forward(surrogate, gather(x, indices)); }

MechanismFit fit_mechanism(const Dataset& dataset, Output mechanism, const MechanismOptions& options) {
  mechanism_slot(mechanism);
  MechanismFit fit;
  const auto y = dataset.output(mechanism);
  const std::string name(to_string(mechanism));
  if (y.empty() || std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
    fit.needs_resampling = true;
    fit.reason = name + " has no variance over the dataset";
    return fit;
  }
  if (dataset.size() < 30) {
    fit.needs_resampling = true;
    fit.reason = name + ": " + std::to_string(dataset.size()) + " rows are too few to screen";
    return fit;
  }
  MechanismRDSM m;
  m.mechanism = mechanism;
  m.baseline = catalog().means();
  m.screening = screen_fdr_logworth(dataset, mechanism, options.rule);
  m.retained = m.screening.retained;
  if (m.retained.empty()) {
    fit.needs_resampling = true;
    fit.reason = name + ": no parameter is significant";
    return fit;
  }
  m.indices = catalog().indices_of(m.retained);
  NetworkSpec spec = options.network;
  spec.input_dim = m.indices.size();
  m.surrogate = train(spec, select_columns(dataset, m.indices), y);
  fit.model = std::move(m);
  return fit;
}

// --------------------------------------------------------------- subspace

std::vector<std::size_t> engaged_rows(const Dataset& dataset, Output mechanism, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const auto& e = dataset.rows[r].energy;
    if (e.TS > 0.0 && e.get(mechanism) >= threshold * e.TS) out.push_back(r);
  }
  return out;
}

std::vector<std::string> select_subspace_parameters(const Dataset& dataset, Output mechanism, std::size_t count,
                                                    const std::vector<std::string>& required, double threshold) {
  if (count == 0 || count > kParamCount) fail(ErrorCode::invalid_argument, "subspace size must lie in [1, 41]");
  if (required.size() > count) fail(ErrorCode::invalid_argument, "more required subspace parameters than slots");
  const auto rows = engaged_rows(dataset, mechanism, threshold);
  if (rows.size() < 30)
    fail(ErrorCode::degenerate, std::string(to_string(mechanism)) + " is engaged in only " +
                                    std::to_string(rows.size()) + " rows; at least 30 are needed to screen");
  const auto engaged = dataset.subset(rows);
  const auto screening = screen_fdr_logworth(engaged, mechanism);

  std::vector<std::string> picked;
  for (const auto& e : screening.entries)
    if (picked.size() < count) picked.push_back(e.name);
  for (const auto& r : required) {
    const auto canonical = catalog()[catalog().index_of(r)].name;
    if (std::find(picked.begin(), picked.end(), canonical) != picked.end()) continue;
    // Replace the lowest-ranked pick that is not itself required.
    for (std::size_t k = picked.size(); k-- > 0;) {
      const bool is_required = std::any_of(required.begin(), required.end(), [&](const std::string& q) {
        return catalog()[catalog().index_of(q)].name == picked[k];
      });
      if (!is_required) {
        picked.erase(picked.begin() + static_cast<std::ptrdiff_t>(k));
        break;
      }
    }
    picked.push_back(canonical);
  }
  return picked;
}

SubspaceSample resample_subspace(const SourceModel& source, const std::vector<std::string>& varied, std::size_t n,
                                 std::uint64_t seed, const SamplingDistribution& dist, Output mechanism,
                                 double threshold, std::size_t threads) {
  if (n == 0) fail(ErrorCode::invalid_argument, "subspace sample size must be >= 1");
  SubspaceSample out;
  out.varied = varied;
  const auto idx = catalog().indices_of(varied);
  const auto design = sample_mc(n, idx.size(), seed);
  const auto means = catalog().means();

  out.all.provenance = Provenance::toy_model;
  out.all.origin = "subspace:seed=" + std::to_string(seed);
  out.all.rows.resize(n);
  parallel_for(n, threads, [&](std::size_t r) {
    auto& row = out.all.rows[r];
    row.id = r;
    row.x = means;
    for (std::size_t k = 0; k < idx.size(); ++k) row.x[idx[k]] = dist.from_unit(idx[k], design(r, k));
    row.energy = source(row.x);
  });
  out.engaged = engaged_rows(out.all, mechanism, threshold);
  out.fitting = out.all.subset(out.engaged);
  out.empty_fit = out.engaged.empty();
  return out;
}

// ----------------------------------------------------------------- summed

SummedPrediction SummedRDSM::predict(const ParamVector& x) const { return summed_predict(*this, x); }

std::vector<std::string> SummedRDSM::inputs() const {
  std::set<std::size_t> all;
  for (const auto& m : mechanisms) all.insert(m.indices.begin(), m.indices.end());
  std::vector<std::string> names;
  for (const auto i : all) names.push_back(catalog()[i].name);
  return names;
}

SummedPrediction summed_predict(const SummedRDSM& summed, const ParamVector& x) {
  SummedPrediction p;
  p.engaged = summed.gate.engaged(x, summed.gate_dist);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& m = summed.mechanisms[k];
    if (m.mechanism == Output::DI && !p.engaged) {
      p.breakdown[k] = 0.0;
      continue;
    }
    p.breakdown[k] = m.predict(x);
  }
  double ts = 0.0;
  for (const double v : p.breakdown) ts += v;
  p.TS = ts;
  return p;
}

SummedFit fit_summed(const Dataset& base, const SourceModel& source, const SummedOptions& options) {
  SummedFit out;
  out.model.gate = options.gate;
  out.model.gate_dist = options.dist;

  for (const Output m : kMechanisms) {
    if (m == Output::DI) continue;
    const std::size_t k = mechanism_slot(m);
    auto fit = fit_mechanism(base, m, options.mechanisms[k]);
    if (!fit.model) fail(ErrorCode::degenerate, fit.reason);
    out.model.mechanisms[k] = std::move(*fit.model);
  }

  out.subspace_params = select_subspace_parameters(base, Output::DI, options.subspace_count,
                                                   {"P", "XS", "GiII"}, options.threshold);
  out.subspace = resample_subspace(source, out.subspace_params, options.subspace_samples, options.subspace_seed,
                                   options.dist, Output::DI, options.threshold, options.threads);
  if (out.subspace.empty_fit) fail(ErrorCode::degenerate, "DI is never engaged in the focused resample");
  auto fit = fit_mechanism(out.subspace.fitting, Output::DI, options.mechanisms[mechanism_slot(Output::DI)]);
  if (!fit.model) fail(ErrorCode::degenerate, fit.reason);
  out.model.mechanisms[mechanism_slot(Output::DI)] = std::move(*fit.model);
  return out;
}

// --------------------------------------------------------------------- UQ

double percent_difference(double a, double b) {
  const double avg = 0.5 * (a + b);
  if (avg == 0.0) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::abs(avg) * 100.0;
}

UQReport uq_sweep(const ParamModel& predictor, const std::vector<std::vector<std::string>>& subsets, std::size_t n,
                  std::uint64_t seed, const SamplingDistribution& dist, std::size_t threads) {
  if (n < 2) fail(ErrorCode::invalid_argument, "UQ sample size must be >= 2");
  for (std::size_t s = 1; s < subsets.size(); ++s) {
    const auto& prev = subsets[s - 1];
    const auto& cur = subsets[s];
    if (cur.size() < prev.size() || !std::equal(prev.begin(), prev.end(), cur.begin()))
      fail(ErrorCode::invalid_argument, "UQ subsets must be nested, each extending the previous one");
  }
  UQReport report;
  report.n_samples = n;
  report.distribution = dist.tag();
  const auto means = catalog().means();

  for (std::size_t s = 0; s < subsets.size(); ++s) {
    UQRow row;
    row.subset = subsets[s];
    const auto idx = catalog().indices_of(subsets[s]);
    if (idx.empty()) {
      row.mean = predictor(means);
      row.std = 0.0;
    } else {
      const auto design = sample_lss(n, idx.size(), Rng::derive(seed, s), default_strata(n));
      std::vector<double> values(n);
      parallel_for(n, threads, [&](std::size_t r) {
        ParamVector x = means;
        for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = dist.from_unit(idx[k], design(r, k));
        values[r] = predictor(x);
      });
      row.mean = stats::mean(values);
      row.std = stats::stddev(values);
    }
    report.rows.push_back(std::move(row));
  }
  for (std::size_t s = 0; s < report.rows.size(); ++s) {
    if (s + 1 < report.rows.size()) {
      report.rows[s].pct_diff_mean = percent_difference(report.rows[s].mean, report.rows[s + 1].mean);
      report.rows[s].pct_diff_std = percent_difference(report.rows[s].std, report.rows[s + 1].std);
    } else {
      report.rows[s].pct_diff_mean = report.rows[s].pct_diff_std = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return report;
}

void save_uq_csv(const UQReport& report, const std::filesystem::path& path) {
  csv::Table table{{"subset", "mean", "std", "pct_diff_mean_to_next", "pct_diff_std_to_next", "n", "distribution"}, {}};
  for (const auto& r : report.rows) {
    std::string subset;
    for (const auto& p : r.subset) subset += (subset.empty() ? "" : " ") + p;
    table.rows.push_back({subset, csv::format(r.mean), csv::format(r.std),
                          std::isnan(r.pct_diff_mean) ? "" : csv::format(r.pct_diff_mean),
                          std::isnan(r.pct_diff_std) ? "" : csv::format(r.pct_diff_std),
                          std::to_string(report.n_samples), report.distribution});
  }
  csv::write(path, table);
}

// ------------------------------------------------------------- comparison

namespace {

ApproachStats approach_stats(const std::vector<double>& pred, const std::vector<double>& truth) {
  ApproachStats s;
  s.mean = stats::mean(pred);
  s.std = stats::stddev(pred);
  const auto err = relative_error(pred, truth, 0.0);
  s.mae_pct = err.mae_pct;
  s.mae_std_pct = err.std_pct;
  return s;
}

ComparisonSection section(const std::vector<double>& truth, const std::vector<double>& direct,
                          const std::vector<double>& summed) {
  ComparisonSection c;
  c.n = truth.size();
  c.applicable = !truth.empty();
  if (!c.applicable) return c;
  c.truth_mean = stats::mean(truth);
  c.truth_std = stats::stddev(truth);
  c.direct = approach_stats(direct, truth);
  c.summed = approach_stats(summed, truth);
  return c;
}

}  // namespace

ComparisonReport compare_approaches(const ParamModel& direct, const ParamModel& summed,
                                    const std::function<bool(const ParamVector&)>& in_gate,
                                    const Dataset& validation) {
  if (validation.empty()) fail(ErrorCode::empty_input, "empty validation set");
  std::vector<double> t_all, d_all, s_all, t_eng, d_eng, s_eng;
  for (const auto& row : validation.rows) {
    const double t = row.energy.TS;
    const double d = direct(row.x);
    const double s = summed(row.x);
    t_all.push_back(t);
    d_all.push_back(d);
    s_all.push_back(s);
    if (in_gate(row.x)) {
      t_eng.push_back(t);
      d_eng.push_back(d);
      s_eng.push_back(s);
    }
  }
  return {section(t_all, d_all, s_all), section(t_eng, d_eng, s_eng)};
}

ComparisonReport compare_approaches(const DirectRDSM& direct, const SummedRDSM& summed, const Dataset& validation) {
  return compare_approaches([&](const ParamVector& x) { return direct.predict(x); },
                            [&](const ParamVector& x) { return summed.predict(x).TS; },
                            [&](const ParamVector& x) { return summed.gate.engaged(x, summed.gate_dist); },
                            validation);
}

void save_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path) {
  csv::Table table{{"section", "statistic", "source", "direct_rdsm", "summed_rdsm"}, {}};
  auto emit = [&](const std::string& name, const ComparisonSection& s) {
    if (!s.applicable) {
      table.rows.push_back({name, "n", "0", "not applicable", "not applicable"});
      return;
    }
    table.rows.push_back({name, "n", std::to_string(s.n), std::to_string(s.n), std::to_string(s.n)});
    table.rows.push_back({name, "mean", csv::format(s.truth_mean), csv::format(s.direct.mean), csv::format(s.summed.mean)});
    table.rows.push_back({name, "std", csv::format(s.truth_std), csv::format(s.direct.std), csv::format(s.summed.std)});
    table.rows.push_back({name, "mae_pct", "", csv::format(s.direct.mae_pct), csv::format(s.summed.mae_pct)});
    table.rows.push_back(
        {name, "mae_std_pct", "", csv::format(s.direct.mae_std_pct), csv::format(s.summed.mae_std_pct)});
  };
  emit("all", report.all);
  emit("gate_engaged", report.engaged);
  csv::write(path, table);
}

// ------------------------------------------------------------- validation

HoldoutSplit hold_out(const Dataset& dataset, std::size_t n_holdout, std::uint64_t seed) {
  if (n_holdout >= dataset.size())
    fail(ErrorCode::invalid_argument, "hold-out of " + std::to_string(n_holdout) + " rows leaves nothing to fit");
  Rng rng(seed);
  auto perm = rng.permutation(dataset.size());
  std::vector<std::size_t> val(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_holdout));
  std::vector<std::size_t> fit(perm.begin() + static_cast<std::ptrdiff_t>(n_holdout), perm.end());
  std::sort(val.begin(), val.end());
  std::sort(fit.begin(), fit.end());
  return {dataset.subset(fit), dataset.subset(val)};
}

Dataset concatenate(const Dataset& a, const Dataset& b, std::string origin) {
  Dataset out;
  out.provenance = a.provenance == b.provenance ? a.provenance : Provenance::external_csv;
  out.origin = std::move(origin);
  out.rows = a.rows;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  std::set<std::uint64_t> ids;
  for (const auto& r : out.rows)
    if (!ids.insert(r.id).second)
      fail(ErrorCode::invalid_argument, "concatenated datasets share row id " + std::to_string(r.id));
  return out;
}

void require_disjoint(const Dataset& training, const Dataset& validation) {
  std::set<std::uint64_t> ids;
  for (const auto& r : training.rows) ids.insert(r.id);
  for (const auto& r : validation.rows)
    if (ids.count(r.id))
      fail(ErrorCode::invalid_argument, "validation row id " + std::to_string(r.id) + " also appears in training");
}

// ------------------------------------------------------------ persistence

namespace {

using nlohmann::json;
constexpr int kManifestVersion = 1;

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void require_manifest(const json& j, std::string_view kind, const std::set<std::string>& keys) {
  if (!j.is_object()) fail(ErrorCode::schema_mismatch, "manifest: expected an object");
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) fail(ErrorCode::schema_mismatch, "manifest: unknown field '" + key + "'");
  for (const auto& key : keys)
    if (!j.contains(key)) fail(ErrorCode::schema_mismatch, "manifest: missing field '" + key + "'");
  if (j.at("kind") != kind) fail(ErrorCode::schema_mismatch, "manifest: expected kind '" + std::string(kind) + "'");
  if (j.at("version") != kManifestVersion) fail(ErrorCode::schema_mismatch, "manifest: unsupported version");
}

void check_model_inputs(const SurrogateModel& m, std::size_t expected, const std::string& what) {
  if (m.input_dim() != expected)
    fail(ErrorCode::schema_mismatch, what + ": surrogate input_dim differs from the retained parameter count");
}

}  // namespace

void save_direct(const DirectRDSM& direct, const std::filesystem::path& dir) {
  save_model(direct.reduced, dir / "reduced.json");
  if (direct.full) save_model(*direct.full, dir / "full.json");
  save_screening_csv(direct.screening, dir / "screening_TS.csv");
  json j = {{"kind", "direct"},
            {"version", kManifestVersion},
            {"retained", direct.retained},
            {"mode", std::string(to_string(direct.mode))},
            {"has_full", direct.full.has_value()},
            {"baseline", std::vector<double>(direct.baseline.begin(), direct.baseline.end())}};
  write_json(dir / "manifest.json", j);
}

DirectRDSM load_direct(const std::filesystem::path& dir) {
  const auto j = read_json(dir / "manifest.json");
  require_manifest(j, "direct", {"kind", "version", "retained", "mode", "has_full", "baseline"});
  DirectRDSM d;
  try {
    d.retained = j.at("retained").get<std::vector<std::string>>();
    d.mode = parse_query_mode(j.at("mode").get<std::string>());
    const auto baseline = j.at("baseline").get<std::vector<double>>();
    if (baseline.size() != kParamCount) fail(ErrorCode::schema_mismatch, "manifest: baseline must have 41 values");
    std::copy(baseline.begin(), baseline.end(), d.baseline.begin());
    if (j.at("has_full").get<bool>()) d.full = load_model(dir / "full.json");
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_mismatch, std::string("manifest: ") + e.what());
  }
  d.indices = catalog().indices_of(d.retained);
  d.reduced = load_model(dir / "reduced.json");
  check_model_inputs(d.reduced, d.indices.size(), "direct");
  if (d.full) check_model_inputs(*d.full, kParamCount, "direct full");
  return d;
}

void save_summed(const SummedRDSM& summed, const std::filesystem::path& dir) {
  json mechanisms = json::array();
  for (const auto& m : summed.mechanisms) {
    const std::string name(to_string(m.mechanism));
    save_model(m.surrogate, dir / (name + ".json"));
    mechanisms.push_back({{"mechanism", name}, {"retained", m.retained}, {"file", name + ".json"}});
  }
  const auto means = catalog().means();
  json j = {{"kind", "summed"},
            {"version", kManifestVersion},
            {"mechanisms", mechanisms},
            {"gate", json::parse(summed.gate.to_json())},
            {"gate_distribution", summed.gate_dist.tag()},
            {"baseline", std::vector<double>(means.begin(), means.end())}};
  write_json(dir / "manifest.json", j);
}

SummedRDSM load_summed(const std::filesystem::path& dir) {
  const auto j = read_json(dir / "manifest.json");
  require_manifest(j, "summed", {"kind", "version", "mechanisms", "gate", "gate_distribution", "baseline"});
  SummedRDSM s;
  try {
    s.gate = EngagementGate::from_json(j.at("gate").dump());
    s.gate_dist = SamplingDistribution::parse(j.at("gate_distribution").get<std::string>());
    const auto baseline = j.at("baseline").get<std::vector<double>>();
    if (baseline.size() != kParamCount) fail(ErrorCode::schema_mismatch, "manifest: baseline must have 41 values");
    const auto& list = j.at("mechanisms");
    if (!list.is_array() || list.size() != 5) fail(ErrorCode::schema_mismatch, "manifest: expected 5 mechanisms");
    std::set<std::size_t> seen;
    for (const auto& mj : list) {
      MechanismRDSM m;
      m.mechanism = parse_output(mj.at("mechanism").get<std::string>());
      const std::size_t slot = mechanism_slot(m.mechanism);
      if (!seen.insert(slot).second) fail(ErrorCode::schema_mismatch, "manifest: duplicate mechanism");
      m.retained = mj.at("retained").get<std::vector<std::string>>();
      m.indices = catalog().indices_of(m.retained);
      std::copy(baseline.begin(), baseline.end(), m.baseline.begin());
      m.surrogate = load_model(dir / mj.at("file").get<std::string>());
      check_model_inputs(m.surrogate, m.indices.size(), std::string(to_string(m.mechanism)));
      s.mechanisms[slot] = std::move(m);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_mismatch, std::string("manifest: ") + e.what());
  }
  return s;
}

}  // namespace srdsm
