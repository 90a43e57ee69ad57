#include "srdsm/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"
#include "srdsm/parallel.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/stats.hpp"

namespace srdsm {

namespace {

constexpr int kFormatVersion = 1;
constexpr double kExclusionFraction = 1e-9;

double relu(double z) { return z > 0.0 ? z : 0.0; }

// Scratch buffers for one forward/backward pass.
struct Workspace {
  std::vector<std::vector<double>> z;  // pre-activations per layer
  std::vector<std::vector<double>> a;  // a[0] = scaled input, a[l+1] = output of layer l
  std::vector<std::vector<double>> delta;

  explicit Workspace(const std::vector<Layer>& layers) {
    z.resize(layers.size());
    delta.resize(layers.size());
    a.resize(layers.size() + 1);
    if (!layers.empty()) a[0].resize(layers.front().in);
    for (std::size_t l = 0; l < layers.size(); ++l) {
      z[l].resize(layers[l].out);
      delta[l].resize(layers[l].out);
      a[l + 1].resize(layers[l].out);
    }
  }
};

// Forward pass on an already scaled input held in ws.a[0]; returns the scaled output.
double run_scaled(const std::vector<Layer>& layers, Workspace& ws) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& L = layers[l];
    const bool hidden = l + 1 < layers.size();
    const double* in = ws.a[l].data();
    for (std::size_t o = 0; o < L.out; ++o) {
      const double* w = L.weights.data() + o * L.in;
      double s = L.biases[o];
      for (std::size_t i = 0; i < L.in; ++i) s += w[i] * in[i];
      ws.z[l][o] = s;
      ws.a[l + 1][o] = hidden ? relu(s) : s;
    }
  }
  return ws.a.back()[0];
}

void scale_input(const SurrogateModel& m, std::span<const double> x, std::vector<double>& out) {
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = (x[i] - m.input_scaling.offset[i]) / m.input_scaling.scale[i];
}

// Accumulates d(scale_factor * (out - target)^2)/dparams into grads (same
// layout as the layers). Requires a prior run_scaled on ws.
void backward(const std::vector<Layer>& layers, Workspace& ws, double target, double factor,
              std::vector<Layer>& grads) {
  const std::size_t last = layers.size() - 1;
  ws.delta[last][0] = factor * 2.0 * (ws.a.back()[0] - target);
  for (std::size_t l = layers.size(); l-- > 0;) {
    const Layer& L = layers[l];
    Layer& G = grads[l];
    const double* in = ws.a[l].data();
    for (std::size_t o = 0; o < L.out; ++o) {
      const double d = ws.delta[l][o];
      if (d == 0.0) continue;
      double* g = G.weights.data() + o * L.in;
      for (std::size_t i = 0; i < L.in; ++i) g[i] += d * in[i];
      G.biases[o] += d;
    }
    if (l == 0) break;
    auto& prev = ws.delta[l - 1];
    std::fill(prev.begin(), prev.end(), 0.0);
    for (std::size_t o = 0; o < L.out; ++o) {
      const double d = ws.delta[l][o];
      if (d == 0.0) continue;
      const double* w = L.weights.data() + o * L.in;
      for (std::size_t i = 0; i < L.in; ++i) prev[i] += d * w[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i)
      if (!(ws.z[l - 1][i] > 0.0)) prev[i] = 0.0;
  }
}

std::vector<Layer> zeros_like(const std::vector<Layer>& layers) {
  std::vector<Layer> g = layers;
  for (auto& L : g) {
    std::fill(L.weights.begin(), L.weights.end(), 0.0);
    std::fill(L.biases.begin(), L.biases.end(), 0.0);
  }
  return g;
}

void check_rows(const Samples& x, std::size_t dim) {
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r].size() != dim)
      fail(ErrorCode::invalid_argument, "row " + std::to_string(r) + " has " + std::to_string(x[r].size()) +
                                            " inputs, model expects " + std::to_string(dim));
    for (const double v : x[r])
      if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "non-finite input at row " + std::to_string(r));
  }
}

}  // namespace

void NetworkSpec::validate() const {
  if (input_dim == 0) fail(ErrorCode::invalid_argument, "network input_dim must be >= 1");
  for (const auto w : hidden_layers)
    if (w == 0) fail(ErrorCode::invalid_argument, "hidden layer widths must be >= 1");
  if (!(learning_rate > 0.0)) fail(ErrorCode::invalid_argument, "learning_rate must be > 0");
  if (batch_size == 0) fail(ErrorCode::invalid_argument, "batch_size must be >= 1");
  if (!(train_fraction > 0.0 && test_fraction >= 0.0) ||
      std::abs(train_fraction + test_fraction - 1.0) > 1e-12)
    fail(ErrorCode::invalid_argument, "train/test fractions must be non-negative and sum to 1");
  if (!(init_std > 0.0)) fail(ErrorCode::invalid_argument, "init_std must be > 0");
  if (!(min_improvement >= 0.0)) fail(ErrorCode::invalid_argument, "min_improvement must be >= 0");
}

SurrogateModel initialize(const NetworkSpec& spec) {
  spec.validate();
  SurrogateModel m;
  m.spec = spec;
  Rng rng(Rng::derive(spec.seed, 1));
  std::size_t in = spec.input_dim;
  std::vector<std::size_t> widths = spec.hidden_layers;
  widths.push_back(1);
  for (const auto out : widths) {
    Layer L{in, out, std::vector<double>(in * out), std::vector<double>(out, 0.0)};
    for (auto& w : L.weights) w = spec.init_std * rng.normal();
    m.layers.push_back(std::move(L));
    in = out;
  }
  m.input_scaling.offset.assign(spec.input_dim, 0.0);
  m.input_scaling.scale.assign(spec.input_dim, 1.0);
  return m;
}

double forward(const SurrogateModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim())
    fail(ErrorCode::invalid_argument, "input has " + std::to_string(x.size()) + " values, model expects " +
                                          std::to_string(model.input_dim()));
  Workspace ws(model.layers);
  scale_input(model, x, ws.a[0]);
  return run_scaled(model.layers, ws) * model.output_scale + model.output_offset;
}

std::vector<double> predict(const SurrogateModel& model, const Samples& x, std::size_t threads) {
  std::vector<double> out(x.size());
  parallel_for(x.size(), threads, [&](std::size_t r) { out[r] = forward(model, x[r]); });
  return out;
}

ErrorSummary relative_error(std::span<const double> predicted, std::span<const double> actual,
                            double exclusion_threshold) {
  if (predicted.size() != actual.size())
    fail(ErrorCode::invalid_argument, "prediction and target lengths differ");
  std::vector<double> rel;
  ErrorSummary s;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (std::abs(actual[i]) <= exclusion_threshold) {
      ++s.excluded;
      continue;
    }
    rel.push_back(std::abs(predicted[i] - actual[i]) / std::abs(actual[i]) * 100.0);
  }
  s.used = rel.size();
  if (!rel.empty()) {
    s.mae_pct = stats::mean(rel);
    s.std_pct = stats::stddev(rel);
  }
  return s;
}

SurrogateModel train(const NetworkSpec& spec, const Samples& x, std::span<const double> y) {
  spec.validate();
  const std::size_t n = x.size();
  if (n < 10) fail(ErrorCode::invalid_argument, "training needs at least 10 rows, got " + std::to_string(n));
  if (y.size() != n) fail(ErrorCode::invalid_argument, "training inputs and outputs differ in row count");
  check_rows(x, spec.input_dim);
  for (std::size_t r = 0; r < n; ++r)
    if (!std::isfinite(y[r])) fail(ErrorCode::invalid_argument, "non-finite target at row " + std::to_string(r));

  // Deterministic split.
  Rng split_rng(Rng::derive(spec.seed, 0));
  const auto perm = split_rng.permutation(n);
  std::size_t n_test = static_cast<std::size_t>(std::llround(spec.test_fraction * static_cast<double>(n)));
  if (spec.test_fraction > 0.0) n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
  const std::size_t n_train = n - n_test;
  std::vector<std::size_t> train_idx(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test_idx(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());

  SurrogateModel m = initialize(spec);

  // Min-max scaling from the training rows.
  const std::size_t d = spec.input_dim;
  if (spec.fit_input_scaling) {
    for (std::size_t j = 0; j < d; ++j) {
      double lo = HUGE_VAL, hi = -HUGE_VAL;
      for (const auto r : train_idx) {
        lo = std::min(lo, x[r][j]);
        hi = std::max(hi, x[r][j]);
      }
      m.input_scaling.offset[j] = lo;
      m.input_scaling.scale[j] = hi > lo ? hi - lo : 1.0;
    }
  }
  double ylo = HUGE_VAL, yhi = -HUGE_VAL;
  for (const auto r : train_idx) {
    ylo = std::min(ylo, y[r]);
    yhi = std::max(yhi, y[r]);
  }
  m.output_offset = ylo;
  m.output_scale = yhi > ylo ? yhi - ylo : 1.0;
  m.report.zero_variance_target = !(yhi > ylo);
  const double exclusion = kExclusionFraction * (yhi - ylo);

  // Pre-scaled copies.
  std::vector<std::vector<double>> xs(n, std::vector<double>(d));
  std::vector<double> ys(n);
  for (std::size_t r = 0; r < n; ++r) {
    scale_input(m, x[r], xs[r]);
    ys[r] = (y[r] - m.output_offset) / m.output_scale;
  }

  Workspace ws(m.layers);
  auto eval_rel = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> pred, act;
    pred.reserve(idx.size());
    act.reserve(idx.size());
    for (const auto r : idx) {
      std::copy(xs[r].begin(), xs[r].end(), ws.a[0].begin());
      pred.push_back(run_scaled(m.layers, ws) * m.output_scale + m.output_offset);
      act.push_back(y[r]);
    }
    return relative_error(pred, act, exclusion);
  };
  const auto& monitor_idx = test_idx.empty() ? train_idx : test_idx;

  // Adam state.
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  auto mom1 = zeros_like(m.layers);
  auto mom2 = zeros_like(m.layers);
  auto grads = zeros_like(m.layers);
  std::uint64_t step = 0;

  Rng shuffle_rng(Rng::derive(spec.seed, 2));
  std::vector<std::size_t> order = train_idx;
  auto best_layers = m.layers;
  double best_mae = eval_rel(monitor_idx).mae_pct;
  double reference_mae = best_mae;  // last value that counted as an improvement
  std::size_t best_epoch = 0, last_improvement = 0, epoch = 0;

  for (epoch = 1; epoch <= spec.epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += spec.batch_size) {
      const std::size_t stop = std::min(order.size(), start + spec.batch_size);
      const double factor = 1.0 / static_cast<double>(stop - start);
      for (auto& G : grads) {
        std::fill(G.weights.begin(), G.weights.end(), 0.0);
        std::fill(G.biases.begin(), G.biases.end(), 0.0);
      }
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t r = order[k];
        std::copy(xs[r].begin(), xs[r].end(), ws.a[0].begin());
        const double out = run_scaled(m.layers, ws);
        loss_sum += (out - ys[r]) * (out - ys[r]);
        backward(m.layers, ws, ys[r], factor, grads);
      }
      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      auto update = [&](std::vector<double>& p, std::vector<double>& g, std::vector<double>& s1,
                        std::vector<double>& s2) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          s1[i] = beta1 * s1[i] + (1.0 - beta1) * g[i];
          s2[i] = beta2 * s2[i] + (1.0 - beta2) * g[i] * g[i];
          p[i] -= spec.learning_rate * (s1[i] / c1) / (std::sqrt(s2[i] / c2) + eps);
        }
      };
      for (std::size_t l = 0; l < m.layers.size(); ++l) {
        update(m.layers[l].weights, grads[l].weights, mom1[l].weights, mom2[l].weights);
        update(m.layers[l].biases, grads[l].biases, mom1[l].biases, mom2[l].biases);
      }
    }
    const double mae = eval_rel(monitor_idx).mae_pct;
    m.telemetry.push_back({epoch, loss_sum / static_cast<double>(order.size()), mae});
    if (!std::isfinite(loss_sum))
      fail(ErrorCode::numerical_failure, "training diverged at epoch " + std::to_string(epoch));
    if (mae < best_mae) {
      best_mae = mae;
      best_layers = m.layers;
      best_epoch = epoch;
    }
    if (mae < reference_mae - spec.min_improvement) {
      reference_mae = mae;
      last_improvement = epoch;
    }
    if (epoch - last_improvement >= spec.patience) break;
  }
  m.layers = std::move(best_layers);

  const auto tr = eval_rel(train_idx);
  m.report.train_mae_pct = tr.mae_pct;
  m.report.train_excluded = tr.excluded;
  m.report.n_train = n_train;
  m.report.n_test = n_test;
  if (!test_idx.empty()) {
    const auto te = eval_rel(test_idx);
    m.report.test_mae_pct = te.mae_pct;
    m.report.test_excluded = te.excluded;
  }
  m.report.epochs_run = std::min(epoch, spec.epochs);
  m.report.best_epoch = best_epoch;
  return m;
}

// ------------------------------------------------------------ gradient check

std::vector<double> loss_gradient(const SurrogateModel& model, std::span<const double> x, double y) {
  if (x.size() != model.input_dim()) fail(ErrorCode::invalid_argument, "gradient: input dimension mismatch");
  Workspace ws(model.layers);
  scale_input(model, x, ws.a[0]);
  run_scaled(model.layers, ws);
  auto grads = zeros_like(model.layers);
  backward(model.layers, ws, (y - model.output_offset) / model.output_scale, 1.0, grads);
  std::vector<double> flat;
  for (const auto& G : grads) {
    flat.insert(flat.end(), G.weights.begin(), G.weights.end());
    flat.insert(flat.end(), G.biases.begin(), G.biases.end());
  }
  return flat;
}

GradientCheckReport gradient_check(const SurrogateModel& model, std::span<const double> x, double y,
                                   double tolerance, std::size_t samples, std::uint64_t seed) {
  const auto grad = loss_gradient(model, x, y);
  const double target = (y - model.output_offset) / model.output_scale;
  SurrogateModel probe = model;
  Workspace ws(probe.layers);

  auto loss_and_pattern = [&](std::vector<char>* pattern) {
    scale_input(probe, x, ws.a[0]);
    const double out = run_scaled(probe.layers, ws);
    if (pattern) {
      pattern->clear();
      for (std::size_t l = 0; l + 1 < ws.z.size(); ++l)
        for (const double z : ws.z[l]) pattern->push_back(z > 0.0 ? 1 : 0);
    }
    return (out - target) * (out - target);
  };

  std::vector<char> base_pattern, plus_pattern, minus_pattern;
  loss_and_pattern(&base_pattern);
  double min_abs_z = HUGE_VAL;
  for (std::size_t l = 0; l + 1 < ws.z.size(); ++l)
    for (const double z : ws.z[l]) min_abs_z = std::min(min_abs_z, std::abs(z));

  // Flat index -> (layer, is_bias, position).
  struct Coord {
    std::size_t layer;
    bool bias;
    std::size_t pos;
  };
  std::vector<Coord> coords;
  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    for (std::size_t i = 0; i < probe.layers[l].weights.size(); ++i) coords.push_back({l, false, i});
    for (std::size_t i = 0; i < probe.layers[l].biases.size(); ++i) coords.push_back({l, true, i});
  }

  GradientCheckReport report;
  Rng rng(seed);
  const double h = 1e-5;
  const std::size_t draws = std::min(samples, coords.size());
  for (std::size_t s = 0; s < draws; ++s) {
    const std::size_t k = samples >= coords.size() ? s : rng.index(coords.size());
    const Coord c = coords[k];
    double& p = c.bias ? probe.layers[c.layer].biases[c.pos] : probe.layers[c.layer].weights[c.pos];
    const double saved = p;
    p = saved + h;
    const double lp = loss_and_pattern(&plus_pattern);
    p = saved - h;
    const double lm = loss_and_pattern(&minus_pattern);
    p = saved;
    if (min_abs_z < 1e-4 || plus_pattern != base_pattern || minus_pattern != base_pattern) {
      ++report.skipped;
      continue;
    }
    const double fd = (lp - lm) / (2.0 * h);
    const double denom = std::max({std::abs(grad[k]), std::abs(fd), 1e-7});
    report.max_rel_error = std::max(report.max_rel_error, std::abs(grad[k] - fd) / denom);
    ++report.checked;
  }
  report.passed = report.max_rel_error <= tolerance && std::isfinite(report.max_rel_error);
  return report;
}

// ------------------------------------------------------------ serialization

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(ErrorCode::parse_error, where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(ErrorCode::schema_mismatch, where + ": unknown field '" + key + "'");
  for (const auto& key : allowed)
    if (!j.contains(key)) fail(ErrorCode::schema_mismatch, where + ": missing field '" + key + "'");
}

json spec_to_json(const NetworkSpec& s) {
  json j = json::object();
  j["input_dim"] = s.input_dim;
  j["hidden_layers"] = s.hidden_layers;
  j["learning_rate"] = s.learning_rate;
  j["epochs"] = s.epochs;
  j["batch_size"] = s.batch_size;
  j["seed"] = s.seed;
  j["train_fraction"] = s.train_fraction;
  j["test_fraction"] = s.test_fraction;
  j["loss"] = "mse";
  j["init"] = {{"kind", "normal"}, {"std", s.init_std}};
  j["patience"] = s.patience;
  j["min_improvement"] = s.min_improvement;
  j["fit_input_scaling"] = s.fit_input_scaling;
  return j;
}

NetworkSpec spec_from_json(const json& j) {
  require_keys(j, "spec",
               {"input_dim", "hidden_layers", "learning_rate", "epochs", "batch_size", "seed", "train_fraction",
                "test_fraction", "loss", "init", "patience", "min_improvement", "fit_input_scaling"});
  require_keys(j.at("init"), "spec.init", {"kind", "std"});
  if (j.at("loss") != "mse") fail(ErrorCode::schema_mismatch, "spec.loss: only 'mse' is supported");
  if (j.at("init").at("kind") != "normal") fail(ErrorCode::schema_mismatch, "spec.init.kind: only 'normal' is supported");
  NetworkSpec s;
  s.input_dim = j.at("input_dim").get<std::size_t>();
  s.hidden_layers = j.at("hidden_layers").get<std::vector<std::size_t>>();
  s.learning_rate = j.at("learning_rate").get<double>();
  s.epochs = j.at("epochs").get<std::size_t>();
  s.batch_size = j.at("batch_size").get<std::size_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.train_fraction = j.at("train_fraction").get<double>();
  s.test_fraction = j.at("test_fraction").get<double>();
  s.init_std = j.at("init").at("std").get<double>();
  s.patience = j.at("patience").get<std::size_t>();
  s.min_improvement = j.at("min_improvement").get<double>();
  s.fit_input_scaling = j.at("fit_input_scaling").get<bool>();
  s.validate();
  return s;
}

}  // namespace

std::string serialize(const SurrogateModel& m) {
  json j = json::object();
  j["format"] = "srdsm-surrogate";
  j["version"] = kFormatVersion;
  j["spec"] = spec_to_json(m.spec);
  j["input_scaling"] = {{"offset", m.input_scaling.offset}, {"scale", m.input_scaling.scale}};
  j["output_scaling"] = {{"offset", m.output_offset}, {"scale", m.output_scale}};
  json layers = json::array();
  for (const auto& L : m.layers)
    layers.push_back({{"in", L.in}, {"out", L.out}, {"weights", L.weights}, {"biases", L.biases}});
  j["layers"] = layers;
  const auto& r = m.report;
  j["report"] = {{"train_mae_pct", r.train_mae_pct},
                 {"test_mae_pct", r.test_mae_pct},
                 {"n_train", r.n_train},
                 {"n_test", r.n_test},
                 {"train_excluded", r.train_excluded},
                 {"test_excluded", r.test_excluded},
                 {"zero_variance_target", r.zero_variance_target},
                 {"epochs_run", r.epochs_run},
                 {"best_epoch", r.best_epoch}};
  return j.dump(1) + "\n";
}

SurrogateModel deserialize(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("surrogate document: ") + e.what());
  }
  try {
    require_keys(j, "surrogate",
                 {"format", "version", "spec", "input_scaling", "output_scaling", "layers", "report"});
    if (j.at("format") != "srdsm-surrogate") fail(ErrorCode::schema_mismatch, "surrogate: unexpected format tag");
    if (j.at("version") != kFormatVersion)
      fail(ErrorCode::schema_mismatch, "surrogate: unsupported version " + j.at("version").dump());

    SurrogateModel m;
    m.spec = spec_from_json(j.at("spec"));
    require_keys(j.at("input_scaling"), "input_scaling", {"offset", "scale"});
    m.input_scaling.offset = j.at("input_scaling").at("offset").get<std::vector<double>>();
    m.input_scaling.scale = j.at("input_scaling").at("scale").get<std::vector<double>>();
    if (m.input_scaling.offset.size() != m.spec.input_dim || m.input_scaling.scale.size() != m.spec.input_dim)
      fail(ErrorCode::schema_mismatch, "input_scaling: length differs from input_dim");
    for (const double s : m.input_scaling.scale)
      if (!(s > 0.0)) fail(ErrorCode::schema_mismatch, "input_scaling: scale must be positive");
    require_keys(j.at("output_scaling"), "output_scaling", {"offset", "scale"});
    m.output_offset = j.at("output_scaling").at("offset").get<double>();
    m.output_scale = j.at("output_scaling").at("scale").get<double>();
    if (!(m.output_scale > 0.0)) fail(ErrorCode::schema_mismatch, "output_scaling: scale must be positive");

    std::size_t in = m.spec.input_dim;
    std::vector<std::size_t> widths = m.spec.hidden_layers;
    widths.push_back(1);
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != widths.size())
      fail(ErrorCode::schema_mismatch, "layers: count differs from the spec");
    for (std::size_t l = 0; l < widths.size(); ++l) {
      const auto& lj = layers[l];
      const std::string where = "layers[" + std::to_string(l) + "]";
      require_keys(lj, where, {"in", "out", "weights", "biases"});
      Layer L{lj.at("in").get<std::size_t>(), lj.at("out").get<std::size_t>(),
              lj.at("weights").get<std::vector<double>>(), lj.at("biases").get<std::vector<double>>()};
      if (L.in != in || L.out != widths[l] || L.weights.size() != L.in * L.out || L.biases.size() != L.out)
        fail(ErrorCode::schema_mismatch, where + ": dimensions inconsistent with the spec");
      m.layers.push_back(std::move(L));
      in = widths[l];
    }
    const auto& rj = j.at("report");
    require_keys(rj, "report",
                 {"train_mae_pct", "test_mae_pct", "n_train", "n_test", "train_excluded", "test_excluded",
                  "zero_variance_target", "epochs_run", "best_epoch"});
    m.report.train_mae_pct = rj.at("train_mae_pct").get<double>();
    m.report.test_mae_pct = rj.at("test_mae_pct").get<double>();
    m.report.n_train = rj.at("n_train").get<std::size_t>();
    m.report.n_test = rj.at("n_test").get<std::size_t>();
    m.report.train_excluded = rj.at("train_excluded").get<std::size_t>();
    m.report.test_excluded = rj.at("test_excluded").get<std::size_t>();
    m.report.zero_variance_target = rj.at("zero_variance_target").get<bool>();
    m.report.epochs_run = rj.at("epochs_run").get<std::size_t>();
    m.report.best_epoch = rj.at("best_epoch").get<std::size_t>();
    return m;
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_mismatch, std::string("surrogate document: ") + e.what());
  }
}

void save_model(const SurrogateModel& model, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  out << serialize(model);
  if (!out) fail(ErrorCode::io_error, "write failed for " + path.string());
}

SurrogateModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void save_telemetry_csv(const SurrogateModel& model, const std::filesystem::path& path) {
  csv::Table table{{"epoch", "train_loss", "test_mae_pct"}, {}};
  for (const auto& e : model.telemetry)
    table.rows.push_back({std::to_string(e.epoch), csv::format(e.train_loss), csv::format(e.test_mae_pct)});
  csv::write(path, table);
}

GridSearchResult grid_search(const NetworkSpec& base, const std::vector<std::vector<std::size_t>>& architectures,
                             const Samples& x, std::span<const double> y) {
  if (architectures.empty()) fail(ErrorCode::invalid_argument, "grid search needs at least one architecture");
  GridSearchResult result;
  result.architectures = architectures;
  double best = HUGE_VAL;
  for (std::size_t k = 0; k < architectures.size(); ++k) {
    NetworkSpec spec = base;
    spec.hidden_layers = architectures[k];
    auto model = train(spec, x, y);
    result.test_mae_pct.push_back(model.report.test_mae_pct);
    if (model.report.test_mae_pct < best) {
      best = model.report.test_mae_pct;
      result.best = k;
      result.model = std::move(model);
    }
  }
  return result;
}

}  // namespace srdsm
