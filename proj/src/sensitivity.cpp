#include "srdsm/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"
#include "srdsm/parallel.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sampling.hpp"
#include "srdsm/stats.hpp"

namespace srdsm {

// ---------------------------------------------------------------- screening

const ScreeningEntry& ScreeningResult::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  fail(ErrorCode::invalid_argument, "screening has no parameter '" + std::string(name) + "'");
}

double logworth(double p) { return -std::log10(std::max(p, 1e-300)); }

std::vector<std::string> retain_parameters(const ScreeningResult& screening, const RetentionRule& rule) {
  if (rule.max_k == 0) fail(ErrorCode::invalid_argument, "retention max_k must be >= 1");
  if (!(rule.drop_ratio > 0.0 && rule.drop_ratio < 1.0))
    fail(ErrorCode::invalid_argument, "retention drop_ratio must lie in (0, 1)");

  std::vector<double> lw;
  for (const auto& e : screening.entries) {
    if (e.logworth < rule.logworth_floor || lw.size() > rule.max_k) break;
    lw.push_back(e.logworth);
  }
  std::size_t keep = std::min(lw.size(), rule.max_k);
  // A drop after position i (1-based) is a candidate cut; the one ending the
  // head of the list (i <= max_k) that lies furthest down is used.
  for (std::size_t i = std::min(lw.size(), rule.max_k + 1); i-- > 1;) {
    if (lw[i] < rule.drop_ratio * lw[i - 1]) {
      keep = i;
      break;
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back(screening.entries[i].name);
  return out;
}

ScreeningResult screen_fdr_logworth(std::span<const std::vector<double>> columns,
                                    std::span<const std::string> names, std::span<const double> y,
                                    std::string output_name, const RetentionRule& rule) {
  if (columns.size() != names.size())
    fail(ErrorCode::invalid_argument, "screening: column and name counts differ");
  if (columns.empty()) fail(ErrorCode::empty_input, "screening: no input columns");
  if (y.size() < 30)
    fail(ErrorCode::invalid_argument,
         "screening needs at least 30 rows, got " + std::to_string(y.size()));

  const std::size_t m = columns.size();
  std::vector<ScreeningEntry> entries(m);
  std::vector<double> raw(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (columns[i].size() != y.size())
      fail(ErrorCode::invalid_argument, "screening: column '" + names[i] + "' length differs from output");
    const auto test = stats::slope_test(columns[i], y);
    entries[i].name = names[i];
    entries[i].index = i;
    entries[i].raw_p = test.p;
    entries[i].zero_variance = test.degenerate;
    raw[i] = test.p;
  }
  const auto adjusted = stats::benjamini_hochberg(raw);
  for (std::size_t i = 0; i < m; ++i) {
    entries[i].fdr_p = adjusted[i];
    entries[i].logworth = logworth(adjusted[i]);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ScreeningEntry& a, const ScreeningEntry& b) { return a.logworth > b.logworth; });

  ScreeningResult result{std::move(output_name), std::move(entries), {}};
  result.retained = retain_parameters(result, rule);
  return result;
}

ScreeningResult screen_fdr_logworth(const Dataset& dataset, Output output, const RetentionRule& rule) {
  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    columns.push_back(dataset.column(i));
    names.push_back(catalog()[i].name);
  }
  const auto y = dataset.output(output);
  return screen_fdr_logworth(columns, names, y, std::string(to_string(output)), rule);
}

void save_screening_csv(const ScreeningResult& screening, const std::filesystem::path& path) {
  csv::Table table{{"parameter", "raw_p", "fdr_p", "logworth", "retained"}, {}};
  for (const auto& e : screening.entries) {
    const bool kept =
        std::find(screening.retained.begin(), screening.retained.end(), e.name) != screening.retained.end();
    table.rows.push_back(
        {e.name, csv::format(e.raw_p), csv::format(e.fdr_p), csv::format(e.logworth), kept ? "1" : "0"});
  }
  csv::write(path, table);
}

// -------------------------------------------------------------------- Sobol

std::vector<std::string> SobolResult::ranking() const {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return entries[a].ST > entries[b].ST; });
  std::vector<std::string> names;
  for (const auto i : order) names.push_back(entries[i].name);
  return names;
}

namespace {

std::vector<double> evaluate(const DesignMatrix& design, const UnitModel& model, std::size_t threads) {
  std::vector<double> out(design.n_samples());
  parallel_for(design.n_samples(), threads, [&](std::size_t r) {
    out[r] = model(design.row(r));
    if (!std::isfinite(out[r]))
      fail(ErrorCode::numerical_failure, "Sobol model returned a non-finite value at row " + std::to_string(r));
  });
  return out;
}

struct Estimates {
  double variance = 0.0;
  std::vector<double> s1;
  std::vector<double> st;
};

// Jansen estimators over the rows listed in idx.
Estimates jansen(const std::vector<double>& fa, const std::vector<double>& fb,
                 const std::vector<std::vector<double>>& fab, std::span<const std::size_t> idx) {
  const std::size_t n = idx.size();
  const std::size_t dim = fab.size();
  std::vector<double> pooled;
  pooled.reserve(2 * n);
  for (const auto r : idx) pooled.push_back(fa[r]);
  for (const auto r : idx) pooled.push_back(fb[r]);
  const double mu = stats::mean(pooled);
  for (auto& v : pooled) v = (v - mu) * (v - mu);
  Estimates e;
  e.variance = stats::sum(pooled) / static_cast<double>(2 * n - 1);
  e.s1.assign(dim, std::numeric_limits<double>::quiet_NaN());
  e.st.assign(dim, std::numeric_limits<double>::quiet_NaN());
  if (!(e.variance > 0.0)) return e;

  std::vector<double> d1(n), dt(n);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r = idx[k];
      const double b = fb[r] - fab[i][r];
      const double a = fa[r] - fab[i][r];
      d1[k] = b * b;
      dt[k] = a * a;
    }
    const double half_n = 2.0 * static_cast<double>(n);
    e.s1[i] = (e.variance - stats::sum(d1) / half_n) / e.variance;
    e.st[i] = stats::sum(dt) / half_n / e.variance;
  }
  return e;
}

}  // namespace

SobolResult sobol_indices(const UnitModel& model, std::span<const std::string> names,
                          const SobolOptions& options) {
  const std::size_t dim = names.size();
  if (dim == 0) fail(ErrorCode::invalid_argument, "Sobol analysis needs at least one input");
  if (options.n_base < 128)
    fail(ErrorCode::invalid_argument,
         "Sobol n_base must be >= 128, got " + std::to_string(options.n_base));

  const auto design = saltelli_matrices(options.n_base, dim, options.seed);
  const auto fa = evaluate(design.A, model, options.threads);
  const auto fb = evaluate(design.B, model, options.threads);
  std::vector<std::vector<double>> fab;
  fab.reserve(dim);
  for (const auto& ab : design.AB) fab.push_back(evaluate(ab, model, options.threads));

  const std::size_t n = options.n_base;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto point = jansen(fa, fb, fab, all);

  SobolResult result;
  result.n_base = n;
  result.evaluations_used = design.evaluations();
  result.variance = point.variance;
  result.degenerate = !(point.variance > 0.0);
  result.entries.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    result.entries[i].name = names[i];
    result.entries[i].S1 = point.s1[i];
    result.entries[i].ST = point.st[i];
  }
  if (result.degenerate) {
    for (auto& e : result.entries) e.S1_stderr = e.ST_stderr = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  // Bootstrap over base rows; each resample reuses the same A/B/AB rows.
  Rng rng(Rng::derive(options.seed, 2));
  std::vector<std::vector<double>> s1_boot(dim), st_boot(dim);
  std::vector<std::size_t> idx(n);
  for (std::size_t b = 0; b < options.bootstrap; ++b) {
    for (auto& r : idx) r = rng.index(n);
    const auto est = jansen(fa, fb, fab, idx);
    if (!(est.variance > 0.0)) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      s1_boot[i].push_back(est.s1[i]);
      st_boot[i].push_back(est.st[i]);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    result.entries[i].S1_stderr = stats::stddev(s1_boot[i]);
    result.entries[i].ST_stderr = stats::stddev(st_boot[i]);
  }
  return result;
}

namespace {

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& p : catalog().specs()) names.push_back(p.name);
  return names;
}

UnitModel through_distribution(const ParamModel& model, const SamplingDistribution& dist) {
  return [model, dist](std::span<const double> u) { return model(to_physical(u, dist)); };
}

}  // namespace

SobolResult sobol_indices(const ParamModel& model, const SamplingDistribution& dist,
                          const SobolOptions& options) {
  const auto names = catalog_names();
  return sobol_indices(through_distribution(model, dist), names, options);
}

SobolConvergence sobol_convergence(const UnitModel& model, std::span<const std::string> names,
                                   std::size_t n_small, std::size_t n_large, std::size_t top_k,
                                   const SobolOptions& options) {
  if (!(n_small < n_large)) fail(ErrorCode::invalid_argument, "convergence check needs n_small < n_large");
  SobolConvergence out;
  auto opts = options;
  opts.n_base = n_small;
  out.small = sobol_indices(model, names, opts);
  opts.n_base = n_large;
  out.large = sobol_indices(model, names, opts);

  if (out.small.degenerate || out.large.degenerate) {
    out.ranking_stable = out.small.degenerate && out.large.degenerate;
    return out;
  }
  const std::size_t k = std::min(top_k, names.size());
  const auto rs = out.small.ranking();
  const auto rl = out.large.ranking();
  out.top_small.assign(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k));
  out.top_large.assign(rl.begin(), rl.begin() + static_cast<std::ptrdiff_t>(k));
  out.ranking_stable = out.top_small == out.top_large;
  for (std::size_t i = 0; i < names.size(); ++i)
    out.max_abs_delta_s1 =
        std::max(out.max_abs_delta_s1, std::abs(out.small.entries[i].S1 - out.large.entries[i].S1));
  return out;
}

SobolConvergence sobol_convergence(const ParamModel& model, const SamplingDistribution& dist,
                                   std::size_t n_small, std::size_t n_large, std::size_t top_k,
                                   const SobolOptions& options) {
  const auto names = catalog_names();
  return sobol_convergence(through_distribution(model, dist), names, n_small, n_large, top_k, options);
}

void save_sobol_csv(const SobolResult& result, const std::filesystem::path& path) {
  csv::Table table{{"parameter", "S1", "ST", "S1_stderr", "ST_stderr"}, {}};
  for (const auto& e : result.entries)
    table.rows.push_back(
        {e.name, csv::format(e.S1), csv::format(e.ST), csv::format(e.S1_stderr), csv::format(e.ST_stderr)});
  csv::write(path, table);
}

}  // namespace srdsm
