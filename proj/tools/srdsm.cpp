// Command-line driver for the reduced-dimension surrogate pipeline.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srdsm/csv.hpp"
#include "srdsm/damage_model.hpp"
#include "srdsm/error.hpp"
#include "srdsm/gate.hpp"
#include "srdsm/param_space.hpp"
#include "srdsm/rdsm.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/run_config.hpp"
#include "srdsm/sampling.hpp"
#include "srdsm/sensitivity.hpp"
#include "srdsm/surrogate.hpp"

#ifndef SRDSM_VERSION
#define SRDSM_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace srdsm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnexpected = 1;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return 3;
    case ErrorCode::out_of_range: return 4;
    case ErrorCode::parse_error: return 5;
    case ErrorCode::schema_mismatch: return 6;
    case ErrorCode::admissibility: return 7;
    case ErrorCode::numerical_failure: return 8;
    case ErrorCode::singularity: return 9;
    case ErrorCode::degenerate: return 10;
    case ErrorCode::io_error: return 11;
    case ErrorCode::empty_input: return 12;
  }
  return kExitUnexpected;
}

const char* kExitHelp =
    "Exit status: 0 success, 1 unexpected failure, 2 usage error, 3 invalid argument,\n"
    "4 out of range, 5 parse error, 6 schema mismatch, 7 inadmissible specimen,\n"
    "8 numerical failure, 9 singular state, 10 degenerate data, 11 I/O error,\n"
    "12 empty input. Errors print one line: error code=<name> exit=<n> message=\"...\".\n"
    "SRDSM_OUTPUT_DIR sets the default output directory.";

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

void print_error(std::string_view code, int status, const std::string& message) {
  std::cerr << "error code=" << code << " exit=" << status << " message=" << quote(message) << "\n";
}

struct Context {
  std::string config_path;
  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out_dir;
  std::string specimen;

  void resolve() {
    if (!config_path.empty()) config = RunConfig::load(config_path);
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (!specimen.empty()) config.specimen = specimen;
    if (config.threads == 0) fail(ErrorCode::invalid_argument, "--threads must be >= 1");
  }

  fs::path output_dir() const { return config.resolved_output_dir(); }

  BendSpecimen bend_specimen() const {
    return config.specimen.empty() ? BendSpecimen::default_specimen() : BendSpecimen::load(config.specimen);
  }

  /// Records the resolved configuration and tool version next to outputs.
  void snapshot(const fs::path& dir, std::string_view command) const {
    fs::create_directories(dir);
    nlohmann::ordered_json j;
    j["tool"] = "srdsm";
    j["version"] = SRDSM_VERSION;
    j["command"] = command;
    j["config"] = nlohmann::ordered_json::parse(config.to_json());
    if (!config.specimen.empty() || command == "simulate" || command == "fit")
      j["specimen"] = nlohmann::ordered_json::parse(bend_specimen().to_json());
    std::ofstream out(dir / (std::string(command) + ".run.json"), std::ios::binary);
    if (!out) fail(ErrorCode::io_error, "cannot write run snapshot in " + dir.string());
    out << j.dump(2) << "\n";
  }
};

fs::path parent_or_dot(const fs::path& p) { return p.has_parent_path() ? p.parent_path() : fs::path("."); }

Dataset load_nonempty(const std::string& path, const std::string& what) {
  if (path.empty()) fail(ErrorCode::invalid_argument, "no " + what + " file given");
  if (!fs::exists(path)) fail(ErrorCode::io_error, what + " file not found: " + path);
  if (fs::file_size(path) == 0) fail(ErrorCode::empty_input, "empty " + what + " set");
  auto ds = load_dataset_csv(path);
  if (ds.empty()) fail(ErrorCode::empty_input, "empty " + what + " set");
  return ds;
}

std::vector<std::vector<std::string>> parse_subsets(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<std::string> names;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto b = item.find_first_not_of(' ');
      const auto e = item.find_last_not_of(' ');
      if (b != std::string::npos) names.push_back(item.substr(b, e - b + 1));
    }
    out.push_back(std::move(names));
  }
  return out;
}

std::string model_kind(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) fail(ErrorCode::io_error, "no manifest.json in " + dir.string());
  try {
    const auto j = nlohmann::json::parse(in);
    return j.at("kind").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, (dir / "manifest.json").string() + ": " + e.what());
  }
}

/// Predictor for TS or a mechanism from a saved direct or summed model.
ParamModel load_predictor(const fs::path& dir, const std::string& output, std::string* label = nullptr) {
  const auto kind = model_kind(dir);
  const Output o = parse_output(output);
  if (kind == "direct") {
    if (o != Output::TS) fail(ErrorCode::invalid_argument, "a direct model predicts TS only");
    auto d = std::make_shared<DirectRDSM>(load_direct(dir));
    if (label) *label = "direct";
    return [d](const ParamVector& x) { return d->predict(x); };
  }
  auto s = std::make_shared<SummedRDSM>(load_summed(dir));
  if (label) *label = "summed";
  if (o == Output::TS) return [s](const ParamVector& x) { return s->predict(x).TS; };
  for (std::size_t k = 0; k < 5; ++k)
    if (s->mechanisms[k].mechanism == o) return [s, k](const ParamVector& x) { return s->mechanisms[k].predict(x); };
  fail(ErrorCode::invalid_argument, "model has no output " + output);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
}

void report_line(const std::string& text) { std::cout << text << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-dimension surrogate modeling of a composite-reinforced metal plate in four-point bending",
               "srdsm"};
  app.footer(kExitHelp);
  app.set_version_flag("--version", SRDSM_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  app.add_option("--config", ctx.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", ctx.seed, "Run seed (overrides the config)");
  app.add_option("--threads", ctx.threads, "Worker threads (default 1)");
  app.add_option("--out-dir", ctx.out_dir, "Output directory (default: config, then SRDSM_OUTPUT_DIR, then srdsm_out)");
  app.add_option("--specimen", ctx.specimen, "Specimen JSON for the toy bend model")->check(CLI::ExistingFile);

  // catalog
  auto* cmd_catalog = app.add_subcommand("catalog", "Print the 41-parameter catalog as CSV");
  std::string catalog_out;
  cmd_catalog->add_option("--out", catalog_out, "Write to a file instead of stdout");

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "Write a sampling design");
  std::optional<std::size_t> sample_n;
  std::string sample_scheme, sample_dist, sample_out;
  std::optional<std::size_t> sample_strata;
  bool sample_physical = false;
  cmd_sample->add_option("--n", sample_n, "Number of samples");
  cmd_sample->add_option("--scheme", sample_scheme, "mc | lhs | lss");
  cmd_sample->add_option("--strata", sample_strata, "LSS coarse strata per dimension");
  cmd_sample->add_option("--distribution", sample_dist, "uniform_pm20 | normal_10std | uniform_custom(lo,hi) | ...");
  cmd_sample->add_flag("--physical", sample_physical, "Write physical values instead of unit coordinates");
  cmd_sample->add_option("--out", sample_out, "Output CSV");

  // simulate
  auto* cmd_simulate = app.add_subcommand("simulate", "Run the toy bend model over a design");
  std::optional<std::size_t> sim_n;
  std::string sim_scheme, sim_dist, sim_out, sim_specimen_out;
  std::uint64_t sim_first_id = 0;
  cmd_simulate->add_option("--n", sim_n, "Number of rows (default 1555)");
  cmd_simulate->add_option("--scheme", sim_scheme, "mc | lhs | lss");
  cmd_simulate->add_option("--distribution", sim_dist, "Sampling distribution tag");
  cmd_simulate->add_option("--first-id", sim_first_id, "Id of the first row");
  cmd_simulate->add_option("--out", sim_out, "Output CSV (default <out-dir>/data.csv)");
  cmd_simulate->add_option("--write-specimen", sim_specimen_out, "Also write the resolved specimen JSON");

  // screen
  auto* cmd_screen = app.add_subcommand("screen", "FDR-logworth screening of one output");
  std::string screen_data, screen_output = "TS", screen_out;
  std::optional<std::size_t> screen_max_k;
  std::optional<double> screen_floor, screen_drop;
  cmd_screen->add_option("--data", screen_data, "Dataset CSV");
  cmd_screen->add_option("--output", screen_output, "PL | DL | DC | DI | PM | TS");
  cmd_screen->add_option("--max-k", screen_max_k, "Retention cap");
  cmd_screen->add_option("--logworth-floor", screen_floor, "Minimum logworth to retain");
  cmd_screen->add_option("--drop-ratio", screen_drop, "Cut where next/current falls below this ratio");
  cmd_screen->add_option("--out", screen_out, "Output CSV (default <out-dir>/screening_<output>.csv)");

  // fit
  auto* cmd_fit = app.add_subcommand("fit", "Fit the direct and/or summed RDSM");
  std::string fit_data, fit_approach = "both", fit_mode;
  std::optional<std::size_t> fit_holdout;
  cmd_fit->add_option("--data", fit_data, "Dataset CSV");
  cmd_fit->add_option("--approach", fit_approach, "direct | summed | both")
      ->check(CLI::IsMember({"direct", "summed", "both"}));
  cmd_fit->add_option("--query-mode", fit_mode, "reduced | full_frozen (direct RDSM)");
  cmd_fit->add_option("--holdout", fit_holdout, "Rows held out for validation (default 25)");

  // sobol
  auto* cmd_sobol = app.add_subcommand("sobol", "First- and total-order Sobol indices");
  std::string sobol_model, sobol_output = "TS", sobol_out;
  bool sobol_source = false;
  std::optional<std::size_t> sobol_n, sobol_large;
  std::size_t sobol_top = 4;
  cmd_sobol->add_option("--model", sobol_model, "Saved model directory (direct or summed)");
  cmd_sobol->add_flag("--source", sobol_source, "Analyse the toy source model instead of a surrogate");
  cmd_sobol->add_option("--output", sobol_output, "Output to analyse");
  cmd_sobol->add_option("--n-base", sobol_n, "Base sample size (default 10000)");
  cmd_sobol->add_option("--convergence", sobol_large, "Also run at this larger base size and compare rankings");
  cmd_sobol->add_option("--top", sobol_top, "Ranking depth for the convergence check");
  cmd_sobol->add_option("--out", sobol_out, "Output CSV (default <out-dir>/sobol_<output>.csv)");

  // uq
  auto* cmd_uq = app.add_subcommand("uq", "Nested-subset uncertainty sweep");
  std::string uq_model, uq_subsets, uq_dist, uq_output = "TS", uq_out;
  std::optional<std::size_t> uq_n;
  cmd_uq->add_option("--model", uq_model, "Saved model directory")->required();
  cmd_uq->add_option("--subsets", uq_subsets, "Nested subsets, e.g. \"A;A,E;A,E,XS\" (default: prefixes of the retained set)");
  cmd_uq->add_option("--output", uq_output, "Output to analyse");
  cmd_uq->add_option("--n", uq_n, "Samples per subset (default 5000)");
  cmd_uq->add_option("--distribution", uq_dist, "Sampling distribution (default normal_10std)");
  cmd_uq->add_option("--out", uq_out, "Output CSV (default <out-dir>/uq.csv)");

  // gate-check
  auto* cmd_gate = app.add_subcommand("gate-check", "Evaluate the disbond engagement gate");
  std::optional<double> gate_p, gate_xs, gate_giii;
  std::string gate_data, gate_out;
  std::optional<std::size_t> gate_grid;
  cmd_gate->add_option("--p", gate_p, "Normalized P in [0,1]");
  cmd_gate->add_option("--xs", gate_xs, "Normalized XS in [0,1]");
  cmd_gate->add_option("--giii", gate_giii, "Normalized GiII in [0,1]");
  cmd_gate->add_option("--data", gate_data, "Tag every row of a dataset CSV");
  cmd_gate->add_option("--grid", gate_grid, "Write an N^3 grid of gate decisions");
  cmd_gate->add_option("--out", gate_out, "Output CSV for --data or --grid");

  // compare
  auto* cmd_compare = app.add_subcommand("compare", "Compare direct and summed RDSMs on validation rows");
  std::string cmp_direct, cmp_summed, cmp_validation, cmp_training, cmp_out;
  std::optional<std::size_t> cmp_fresh;
  cmd_compare->add_option("--direct", cmp_direct, "Direct model directory (default <out-dir>/models/direct)");
  cmd_compare->add_option("--summed", cmp_summed, "Summed model directory (default <out-dir>/models/summed)");
  cmd_compare->add_option("--validation", cmp_validation, "Validation CSV (default <out-dir>/validation_holdout.csv)");
  cmd_compare->add_option("--training", cmp_training, "Training CSV; validation ids must not occur in it outside the hold-out");
  cmd_compare->add_option("--fresh", cmp_fresh, "Fresh toy rows appended to the validation set (default 200)");
  cmd_compare->add_option("--out", cmp_out, "Output CSV (default <out-dir>/comparison.csv)");

  // plot-data
  auto* cmd_plot = app.add_subcommand("plot-data", "Emit CSV series for plotting");
  std::string plot_kind, plot_model, plot_data, plot_output = "TS", plot_out;
  std::optional<double> plot_giii;
  std::size_t plot_resolution = 101;
  cmd_plot->add_option("--kind", plot_kind, "parity | energy-stack | gate-slice")
      ->required()
      ->check(CLI::IsMember({"parity", "energy-stack", "gate-slice"}));
  cmd_plot->add_option("--model", plot_model, "Model directory (parity)");
  cmd_plot->add_option("--data", plot_data, "Dataset CSV (parity, energy-stack)");
  cmd_plot->add_option("--output", plot_output, "Output for parity plots");
  cmd_plot->add_option("--giii", plot_giii, "Normalized GiII for gate-slice (default 0.5)");
  cmd_plot->add_option("--resolution", plot_resolution, "Grid points per axis for gate-slice");
  cmd_plot->add_option("--out", plot_out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", kExitUsage, e.what());
    return kExitUsage;
  }

  try {
    ctx.resolve();
    RunConfig& cfg = ctx.config;

    if (cmd_catalog->parsed()) {
      csv::Table t{{"name", "mean", "units", "group"}, {}};
      for (const auto& p : catalog().specs())
        t.rows.push_back({p.name, csv::format(p.mean), p.units, std::string(to_string(p.group))});
      if (catalog_out.empty()) {
        std::cout << csv::join(t.header) << "\n";
        for (const auto& r : t.rows) std::cout << csv::join(r) << "\n";
      } else {
        csv::write(catalog_out, t);
        ctx.snapshot(parent_or_dot(catalog_out), "catalog");
      }
      return 0;
    }

    auto make_design = [&](std::size_t n, const std::string& scheme, std::uint64_t seed) {
      if (scheme == "mc") return sample_mc(n, kParamCount, seed);
      if (scheme == "lhs") return sample_lhs(n, kParamCount, seed);
      if (scheme == "lss") return sample_lss(n, kParamCount, seed, cfg.strata ? cfg.strata : default_strata(n));
      fail(ErrorCode::invalid_argument, "unknown scheme '" + scheme + "' (expected mc|lhs|lss)");
    };

    if (cmd_sample->parsed()) {
      if (sample_n) cfg.samples = *sample_n;
      if (!sample_scheme.empty()) cfg.scheme = sample_scheme;
      if (sample_strata) cfg.strata = *sample_strata;
      if (!sample_dist.empty()) cfg.distribution = sample_dist;
      const fs::path out = sample_out.empty() ? ctx.output_dir() / "design.csv" : fs::path(sample_out);
      const auto design = make_design(cfg.samples, cfg.scheme, cfg.seed);
      save_design_csv(design, SamplingDistribution::parse(cfg.distribution), sample_physical, out);
      ctx.snapshot(parent_or_dot(out), "sample");
      report_line("wrote " + std::to_string(design.n_samples()) + " rows to " + out.string());
      return 0;
    }

    if (cmd_simulate->parsed()) {
      if (sim_n) cfg.samples = *sim_n;
      if (!sim_scheme.empty()) cfg.scheme = sim_scheme;
      if (!sim_dist.empty()) cfg.distribution = sim_dist;
      const fs::path out = sim_out.empty() ? ctx.output_dir() / "data.csv" : fs::path(sim_out);
      const auto specimen = ctx.bend_specimen();
      const auto design = make_design(cfg.samples, cfg.scheme, cfg.seed);
      const auto ds = simulate_design(design, specimen, SamplingDistribution::parse(cfg.distribution),
                                      static_cast<unsigned>(cfg.threads), sim_first_id,
                                      "toy:" + cfg.scheme + ":seed=" + std::to_string(cfg.seed));
      save_dataset_csv(ds, out);
      if (!sim_specimen_out.empty()) write_text(sim_specimen_out, specimen.to_json());
      ctx.snapshot(parent_or_dot(out), "simulate");
      report_line("wrote " + std::to_string(ds.size()) + " rows to " + out.string());
      return 0;
    }

    if (cmd_screen->parsed()) {
      if (!screen_data.empty()) cfg.dataset = screen_data;
      const auto ds = load_nonempty(cfg.dataset, "dataset");
      const Output o = parse_output(screen_output);
      RetentionRule rule = o == Output::TS ? cfg.retention_total : cfg.retention_mechanism;
      if (screen_max_k) rule.max_k = *screen_max_k;
      if (screen_floor) rule.logworth_floor = *screen_floor;
      if (screen_drop) rule.drop_ratio = *screen_drop;
      const auto result = screen_fdr_logworth(ds, o, rule);
      const fs::path out =
          screen_out.empty() ? ctx.output_dir() / ("screening_" + screen_output + ".csv") : fs::path(screen_out);
      save_screening_csv(result, out);
      ctx.snapshot(parent_or_dot(out), "screen");
      std::string kept;
      for (const auto& r : result.retained) kept += (kept.empty() ? "" : ",") + r;
      report_line("retained=" + (kept.empty() ? std::string("none") : kept));
      return 0;
    }

    if (cmd_fit->parsed()) {
      if (!fit_data.empty()) cfg.dataset = fit_data;
      if (!fit_mode.empty()) cfg.query_mode = fit_mode;
      if (fit_holdout) cfg.holdout = *fit_holdout;
      const auto ds = load_nonempty(cfg.dataset, "dataset");
      const fs::path dir = ctx.output_dir();
      auto split = cfg.holdout > 0 ? hold_out(ds, cfg.holdout, Rng::derive(cfg.seed, 11))
                                   : HoldoutSplit{ds, Dataset{ds.provenance, ds.origin, {}}};
      if (cfg.holdout > 0) save_dataset_csv(split.validation, dir / "validation_holdout.csv");

      if (fit_approach != "summed") {
        DirectOptions opt;
        opt.network = cfg.network(Output::TS);
        opt.network.seed = network_seed(cfg.seed, Output::TS);
        opt.rule = cfg.retention_total;
        opt.mode = parse_query_mode(cfg.query_mode);
        const auto direct = fit_direct(split.fit, opt);
        save_direct(direct, dir / "models" / "direct");
        save_telemetry_csv(direct.reduced, dir / "telemetry" / "direct_reduced.csv");
        if (direct.full) save_telemetry_csv(*direct.full, dir / "telemetry" / "direct_full.csv");
        std::string kept;
        for (const auto& r : direct.retained) kept += (kept.empty() ? "" : ",") + r;
        std::ostringstream line;
        line << "direct retained=" << kept << " test_mae_pct=" << direct.reduced.report.test_mae_pct;
        if (direct.full) line << " full_test_mae_pct=" << direct.full->report.test_mae_pct;
        report_line(line.str());
      }
      if (fit_approach != "direct") {
        const auto specimen = ctx.bend_specimen();
        SummedOptions opt;
        for (std::size_t k = 0; k < 5; ++k) {
          const Output m = kMechanisms[k];
          opt.mechanisms[k].network = cfg.network(m);
          opt.mechanisms[k].network.seed = network_seed(cfg.seed, m);
          opt.mechanisms[k].rule = cfg.retention_mechanism;
        }
        opt.gate = cfg.gate;
        opt.dist = SamplingDistribution::parse(cfg.distribution);
        opt.subspace_count = cfg.subspace_count;
        opt.subspace_samples = cfg.subspace_samples;
        opt.subspace_seed = Rng::derive(cfg.seed, 12);
        opt.threshold = cfg.engagement_threshold;
        opt.threads = cfg.threads;
        const SourceModel source = [&specimen](const ParamVector& x) { return simulate_bend(x, specimen); };
        const auto fit = fit_summed(split.fit, source, opt);
        save_summed(fit.model, dir / "models" / "summed");
        save_dataset_csv(fit.subspace.all, dir / "subspace_DI.csv");
        for (const auto& m : fit.model.mechanisms) {
          const std::string name(to_string(m.mechanism));
          save_telemetry_csv(m.surrogate, dir / "telemetry" / ("summed_" + name + ".csv"));
          save_screening_csv(m.screening, dir / "models" / "summed" / ("screening_" + name + ".csv"));
          std::string kept;
          for (const auto& r : m.retained) kept += (kept.empty() ? "" : ",") + r;
          std::ostringstream line;
          line << "summed " << name << " retained=" << kept << " test_mae_pct=" << m.surrogate.report.test_mae_pct;
          report_line(line.str());
        }
        report_line("DI subspace engaged_rows=" + std::to_string(fit.subspace.engaged.size()) + " of " +
                    std::to_string(fit.subspace.all.size()));
      }
      ctx.snapshot(dir, "fit");
      return 0;
    }

    if (cmd_sobol->parsed()) {
      if (sobol_n) cfg.sobol_n_base = *sobol_n;
      SobolOptions opt;
      opt.n_base = cfg.sobol_n_base;
      opt.seed = Rng::derive(cfg.seed, 13);
      opt.bootstrap = cfg.sobol_bootstrap;
      opt.threads = cfg.threads;
      ParamModel model;
      if (sobol_source) {
        const Output o = parse_output(sobol_output);
        auto specimen = std::make_shared<BendSpecimen>(ctx.bend_specimen());
        model = [specimen, o](const ParamVector& x) { return simulate_bend(x, *specimen).get(o); };
      } else {
        if (sobol_model.empty()) sobol_model = (ctx.output_dir() / "models" / "direct").string();
        model = load_predictor(sobol_model, sobol_output);
      }
      const auto dist = SamplingDistribution::parse(cfg.distribution);
      const fs::path out =
          sobol_out.empty() ? ctx.output_dir() / ("sobol_" + sobol_output + ".csv") : fs::path(sobol_out);
      if (sobol_large) {
        const auto conv = sobol_convergence(model, dist, cfg.sobol_n_base, *sobol_large, sobol_top, opt);
        save_sobol_csv(conv.large, out);
        std::string a, b;
        for (const auto& s : conv.top_small) a += (a.empty() ? "" : ",") + s;
        for (const auto& s : conv.top_large) b += (b.empty() ? "" : ",") + s;
        std::ostringstream line;
        line << "ranking_stable=" << (conv.ranking_stable ? 1 : 0) << " top_small=" << a << " top_large=" << b
             << " max_abs_delta_s1=" << conv.max_abs_delta_s1;
        report_line(line.str());
      } else {
        const auto result = sobol_indices(model, dist, opt);
        if (result.degenerate) fail(ErrorCode::degenerate, "model output has zero variance; indices are undefined");
        save_sobol_csv(result, out);
        std::string top;
        for (const auto& s : result.ranking()) {
          if (std::count(top.begin(), top.end(), ',') >= 3) break;
          top += (top.empty() ? "" : ",") + s;
        }
        report_line("evaluations=" + std::to_string(result.evaluations_used) + " top=" + top);
      }
      ctx.snapshot(parent_or_dot(out), "sobol");
      return 0;
    }

    if (cmd_uq->parsed()) {
      if (uq_n) cfg.uq_samples = *uq_n;
      if (!uq_dist.empty()) cfg.uq_distribution = uq_dist;
      const auto predictor = load_predictor(uq_model, uq_output);
      std::vector<std::vector<std::string>> subsets;
      if (!uq_subsets.empty()) {
        subsets = parse_subsets(uq_subsets);
      } else {
        std::vector<std::string> retained;
        if (model_kind(uq_model) == "direct") {
          retained = load_direct(uq_model).retained;
        } else {
          retained = load_summed(uq_model).inputs();
        }
        for (std::size_t k = 1; k <= retained.size(); ++k) subsets.emplace_back(retained.begin(), retained.begin() + k);
      }
      const auto report = uq_sweep(predictor, subsets, cfg.uq_samples, Rng::derive(cfg.seed, 14),
                                   SamplingDistribution::parse(cfg.uq_distribution), cfg.threads);
      const fs::path out = uq_out.empty() ? ctx.output_dir() / "uq.csv" : fs::path(uq_out);
      save_uq_csv(report, out);
      ctx.snapshot(parent_or_dot(out), "uq");
      for (const auto& r : report.rows) {
        std::string s;
        for (const auto& p : r.subset) s += (s.empty() ? "" : ",") + p;
        std::ostringstream line;
        line << "subset=" << (s.empty() ? "none" : s) << " mean=" << r.mean << " std=" << r.std;
        report_line(line.str());
      }
      return 0;
    }

    if (cmd_gate->parsed()) {
      const auto& gate = cfg.gate;
      if (gate_p || gate_xs || gate_giii) {
        if (!(gate_p && gate_xs && gate_giii))
          fail(ErrorCode::invalid_argument, "--p, --xs and --giii must be given together");
        report_line(std::string("engaged=") + (gate.engaged(*gate_p, *gate_xs, *gate_giii) ? "1" : "0"));
        return 0;
      }
      csv::Table t;
      if (!gate_data.empty()) {
        const auto ds = load_nonempty(gate_data, "dataset");
        const auto dist = SamplingDistribution::parse(cfg.distribution);
        t.header = {"id", "engaged", "DI_fraction"};
        for (const auto& r : ds.rows)
          t.rows.push_back({std::to_string(r.id), gate.engaged(r.x, dist) ? "1" : "0",
                            csv::format(r.energy.TS > 0 ? r.energy.DI / r.energy.TS : 0.0)});
      } else if (gate_grid) {
        const std::size_t n = *gate_grid;
        if (n < 2) fail(ErrorCode::invalid_argument, "--grid needs at least 2 points per axis");
        t.header = {"P", "XS", "GiII", "engaged"};
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
              const double d = static_cast<double>(n - 1);
              const double p = i / d, xs = j / d, z = k / d;
              t.rows.push_back({csv::format(p), csv::format(xs), csv::format(z), gate.engaged(p, xs, z) ? "1" : "0"});
            }
      } else {
        fail(ErrorCode::invalid_argument, "give --p/--xs/--giii, --data or --grid");
      }
      const fs::path out = gate_out.empty() ? ctx.output_dir() / "gate.csv" : fs::path(gate_out);
      csv::write(out, t);
      ctx.snapshot(parent_or_dot(out), "gate-check");
      report_line("wrote " + std::to_string(t.rows.size()) + " rows to " + out.string());
      return 0;
    }

    if (cmd_compare->parsed()) {
      const fs::path dir = ctx.output_dir();
      const fs::path direct_dir = cmp_direct.empty() ? dir / "models" / "direct" : fs::path(cmp_direct);
      const fs::path summed_dir = cmp_summed.empty() ? dir / "models" / "summed" : fs::path(cmp_summed);
      if (!cmp_validation.empty()) cfg.validation = cmp_validation;
      if (cfg.validation.empty()) cfg.validation = (dir / "validation_holdout.csv").string();
      if (cmp_fresh) cfg.fresh_validation = *cmp_fresh;
      if (!cmp_training.empty()) cfg.dataset = cmp_training;
      auto validation = load_nonempty(cfg.validation, "validation");
      if (cfg.fresh_validation > 0) {
        const auto fresh = generate_dataset(cfg.fresh_validation, Rng::derive(cfg.seed, 15), ctx.bend_specimen(),
                                            SamplingDistribution::parse(cfg.distribution),
                                            static_cast<unsigned>(cfg.threads), std::uint64_t{1} << 32);
        validation = concatenate(validation, fresh, "validation");
      }
      const auto direct = load_direct(direct_dir);
      const auto summed = load_summed(summed_dir);
      if (!cfg.dataset.empty() && fs::exists(cfg.dataset)) {
        const auto training = load_dataset_csv(cfg.dataset);
        const auto held = load_dataset_csv(cfg.validation);
        std::set<std::uint64_t> held_ids;
        for (const auto& r : held.rows) held_ids.insert(r.id);
        Dataset fitted{training.provenance, training.origin, {}};
        for (const auto& r : training.rows)
          if (!held_ids.count(r.id)) fitted.rows.push_back(r);
        require_disjoint(fitted, validation);
      }
      const auto report = compare_approaches(direct, summed, validation);
      const fs::path out = cmp_out.empty() ? dir / "comparison.csv" : fs::path(cmp_out);
      save_comparison_csv(report, out);
      ctx.snapshot(parent_or_dot(out), "compare");
      std::ostringstream line;
      line << "n=" << report.all.n << " direct_mae_pct=" << report.all.direct.mae_pct
           << " summed_mae_pct=" << report.all.summed.mae_pct << " engaged_n=" << report.engaged.n;
      report_line(line.str());
      return 0;
    }

    if (cmd_plot->parsed()) {
      csv::Table t;
      if (plot_kind == "parity") {
        if (plot_model.empty()) fail(ErrorCode::invalid_argument, "parity plots need --model");
        const auto ds = load_nonempty(plot_data, "dataset");
        const auto predictor = load_predictor(plot_model, plot_output);
        const Output o = parse_output(plot_output);
        t.header = {"id", "actual", "predicted"};
        for (const auto& r : ds.rows)
          t.rows.push_back({std::to_string(r.id), csv::format(r.energy.get(o)), csv::format(predictor(r.x))});
      } else if (plot_kind == "energy-stack") {
        const auto ds = load_nonempty(plot_data, "dataset");
        std::vector<std::size_t> order(ds.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return ds.rows[a].energy.TS < ds.rows[b].energy.TS; });
        t.header = {"rank", "id", "TS", "PL", "DL", "DC", "DI", "PM"};
        for (std::size_t k = 0; k < order.size(); ++k) {
          const auto& r = ds.rows[order[k]];
          t.rows.push_back({std::to_string(k), std::to_string(r.id), csv::format(r.energy.TS), csv::format(r.energy.PL),
                            csv::format(r.energy.DL), csv::format(r.energy.DC), csv::format(r.energy.DI),
                            csv::format(r.energy.PM)});
        }
      } else {
        const double z = plot_giii.value_or(0.5);
        if (plot_resolution < 2) fail(ErrorCode::invalid_argument, "--resolution must be >= 2");
        t.header = {"P", "XS", "GiII", "engaged"};
        const double d = static_cast<double>(plot_resolution - 1);
        for (std::size_t j = 0; j < plot_resolution; ++j)
          for (std::size_t i = 0; i < plot_resolution; ++i) {
            const double p = i / d, xs = j / d;
            t.rows.push_back({csv::format(p), csv::format(xs), csv::format(z), cfg.gate.engaged(p, xs, z) ? "1" : "0"});
          }
      }
      const fs::path out = plot_out.empty() ? ctx.output_dir() / ("plot_" + plot_kind + ".csv") : fs::path(plot_out);
      csv::write(out, t);
      ctx.snapshot(parent_or_dot(out), "plot-data");
      report_line("wrote " + std::to_string(t.rows.size()) + " rows to " + out.string());
      return 0;
    }
  } catch (const Error& e) {
    const int status = exit_code(e.code());
    print_error(to_string(e.code()), status, e.what());
    return status;
  } catch (const std::exception& e) {
    print_error("unexpected", kExitUnexpected, e.what());
    return kExitUnexpected;
  }
  return kExitUsage;
}
