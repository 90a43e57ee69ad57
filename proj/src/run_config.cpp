#include "srdsm/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "srdsm/error.hpp"
#include "srdsm/rng.hpp"

namespace srdsm {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::size_t output_slot(Output o) {
  for (std::size_t k = 0; k < kOutputs.size(); ++k)
    if (kOutputs[k] == o) return k;
  fail(ErrorCode::invalid_argument, "unknown output");
}

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(ErrorCode::schema_mismatch, where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(ErrorCode::schema_mismatch, where + ": unknown field '" + key + "'");
}

ordered rule_json(const RetentionRule& r) {
  ordered j;
  j["max_k"] = r.max_k;
  j["logworth_floor"] = r.logworth_floor;
  j["drop_ratio"] = r.drop_ratio;
  return j;
}

void merge_rule(const json& j, const std::string& where, RetentionRule& r) {
  reject_unknown(j, where, {"max_k", "logworth_floor", "drop_ratio"});
  r.max_k = j.value("max_k", r.max_k);
  r.logworth_floor = j.value("logworth_floor", r.logworth_floor);
  r.drop_ratio = j.value("drop_ratio", r.drop_ratio);
}

ordered network_json(const NetworkSpec& s) {
  ordered j;
  j["hidden_layers"] = s.hidden_layers;
  j["learning_rate"] = s.learning_rate;
  j["epochs"] = s.epochs;
  j["batch_size"] = s.batch_size;
  j["train_fraction"] = s.train_fraction;
  j["test_fraction"] = s.test_fraction;
  j["init_std"] = s.init_std;
  j["patience"] = s.patience;
  j["min_improvement"] = s.min_improvement;
  return j;
}

void merge_network(const json& j, const std::string& where, NetworkSpec& s) {
  reject_unknown(j, where,
                 {"hidden_layers", "learning_rate", "epochs", "batch_size", "train_fraction", "test_fraction",
                  "init_std", "patience", "min_improvement"});
  s.hidden_layers = j.value("hidden_layers", s.hidden_layers);
  s.learning_rate = j.value("learning_rate", s.learning_rate);
  s.epochs = j.value("epochs", s.epochs);
  s.batch_size = j.value("batch_size", s.batch_size);
  s.train_fraction = j.value("train_fraction", s.train_fraction);
  s.test_fraction = j.value("test_fraction", s.test_fraction);
  s.init_std = j.value("init_std", s.init_std);
  s.patience = j.value("patience", s.patience);
  s.min_improvement = j.value("min_improvement", s.min_improvement);
  s.validate();
}

}  // namespace

std::uint64_t network_seed(std::uint64_t run_seed, Output output) {
  return Rng::derive(run_seed, 100 + output_slot(output));
}

RunConfig::RunConfig() {
  for (std::size_t k = 0; k < kOutputs.size(); ++k) networks[k] = default_network(kOutputs[k]);
}

const NetworkSpec& RunConfig::network(Output output) const { return networks[output_slot(output)]; }
NetworkSpec& RunConfig::network(Output output) { return networks[output_slot(output)]; }

std::filesystem::path RunConfig::resolved_output_dir() const {
  if (!output_dir.empty()) return output_dir;
  if (const char* env = std::getenv("SRDSM_OUTPUT_DIR"); env && *env) return env;
  return "srdsm_out";
}

std::string RunConfig::to_json() const {
  ordered j;
  j["seed"] = seed;
  j["threads"] = threads;
  j["output_dir"] = resolved_output_dir().string();
  j["specimen"] = specimen;
  j["dataset"] = dataset;
  j["validation"] = validation;
  j["distribution"] = distribution;
  j["sampler"] = ordered{{"scheme", scheme}, {"strata", strata}, {"samples", samples}};
  ordered nets;
  for (std::size_t k = 0; k < kOutputs.size(); ++k) nets[std::string(to_string(kOutputs[k]))] = network_json(networks[k]);
  j["networks"] = nets;
  j["retention"] = ordered{{"total", rule_json(retention_total)}, {"mechanism", rule_json(retention_mechanism)}};
  j["gate"] = ordered::parse(gate.to_json());
  j["subspace"] = ordered{{"count", subspace_count}, {"samples", subspace_samples}, {"threshold", engagement_threshold}};
  j["validation_protocol"] = ordered{{"holdout", holdout}, {"fresh", fresh_validation}};
  j["query_mode"] = query_mode;
  j["uq"] = ordered{{"samples", uq_samples}, {"distribution", uq_distribution}};
  j["sobol"] = ordered{{"n_base", sobol_n_base}, {"bootstrap", sobol_bootstrap}};
  return j.dump(2) + "\n";
}

void RunConfig::merge_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
  try {
    reject_unknown(j, "config",
                   {"seed", "threads", "output_dir", "specimen", "dataset", "validation", "distribution", "sampler",
                    "networks", "retention", "gate", "subspace", "validation_protocol", "query_mode", "uq", "sobol"});
    seed = j.value("seed", seed);
    threads = j.value("threads", threads);
    output_dir = j.value("output_dir", output_dir);
    specimen = j.value("specimen", specimen);
    dataset = j.value("dataset", dataset);
    validation = j.value("validation", validation);
    distribution = j.value("distribution", distribution);
    SamplingDistribution::parse(distribution);
    if (j.contains("sampler")) {
      const auto& s = j.at("sampler");
      reject_unknown(s, "config.sampler", {"scheme", "strata", "samples"});
      scheme = s.value("scheme", scheme);
      strata = s.value("strata", strata);
      samples = s.value("samples", samples);
    }
    if (j.contains("networks")) {
      const auto& n = j.at("networks");
      reject_unknown(n, "config.networks", {"PL", "DL", "DC", "DI", "PM", "TS"});
      for (const auto& [key, value] : n.items())
        merge_network(value, "config.networks." + key, network(parse_output(key)));
    }
    if (j.contains("retention")) {
      const auto& r = j.at("retention");
      reject_unknown(r, "config.retention", {"total", "mechanism"});
      if (r.contains("total")) merge_rule(r.at("total"), "config.retention.total", retention_total);
      if (r.contains("mechanism")) merge_rule(r.at("mechanism"), "config.retention.mechanism", retention_mechanism);
    }
    if (j.contains("gate")) gate = EngagementGate::from_json(j.at("gate").dump());
    if (j.contains("subspace")) {
      const auto& s = j.at("subspace");
      reject_unknown(s, "config.subspace", {"count", "samples", "threshold"});
      subspace_count = s.value("count", subspace_count);
      subspace_samples = s.value("samples", subspace_samples);
      engagement_threshold = s.value("threshold", engagement_threshold);
    }
    if (j.contains("validation_protocol")) {
      const auto& v = j.at("validation_protocol");
      reject_unknown(v, "config.validation_protocol", {"holdout", "fresh"});
      holdout = v.value("holdout", holdout);
      fresh_validation = v.value("fresh", fresh_validation);
    }
    query_mode = j.value("query_mode", query_mode);
    parse_query_mode(query_mode);
    if (j.contains("uq")) {
      const auto& u = j.at("uq");
      reject_unknown(u, "config.uq", {"samples", "distribution"});
      uq_samples = u.value("samples", uq_samples);
      uq_distribution = u.value("distribution", uq_distribution);
      SamplingDistribution::parse(uq_distribution);
    }
    if (j.contains("sobol")) {
      const auto& s = j.at("sobol");
      reject_unknown(s, "config.sobol", {"n_base", "bootstrap"});
      sobol_n_base = s.value("n_base", sobol_n_base);
      sobol_bootstrap = s.value("bootstrap", sobol_bootstrap);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_mismatch, std::string("config: ") + e.what());
  }
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig c;
  c.merge_json(buf.str());
  return c;
}

}  // namespace srdsm
