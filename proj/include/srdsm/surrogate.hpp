#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srdsm {

/// Rows of equal-length input vectors.
using Samples = std::vector<std::vector<double>>;

struct NetworkSpec {
  std::size_t input_dim = 1;
  std::vector<std::size_t> hidden_layers{60, 80};
  double learning_rate = 0.001;
  std::size_t epochs = 2000;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  double train_fraction = 0.9;
  double test_fraction = 0.1;
  double init_std = 0.05;
  /// Early stopping: stop once held-out MAE% has not improved by
  /// min_improvement points for `patience` epochs; the best weights are kept.
  std::size_t patience = 200;
  double min_improvement = 0.05;
  /// Fit min-max input scaling on the training rows; otherwise inputs are
  /// used as given.
  bool fit_input_scaling = true;

  void validate() const;
};

struct Layer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> biases;   // out
};

/// Per-dimension affine map: scaled = (raw - offset) / scale.
struct Scaling {
  std::vector<double> offset;
  std::vector<double> scale;
};

/// Relative error statistics; rows with |y| at or below 1e-9 of the training
/// output range are excluded from the percentage and counted separately.
struct ErrorSummary {
  double mae_pct = 0.0;
  double std_pct = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

struct TrainReport {
  double train_mae_pct = 0.0;
  double test_mae_pct = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t train_excluded = 0;
  std::size_t test_excluded = 0;
  bool zero_variance_target = false;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // mean squared error in scaled output units
  double test_mae_pct = 0.0;
};

struct SurrogateModel {
  NetworkSpec spec;
  std::vector<Layer> layers;  // ReLU after every layer but the last
  Scaling input_scaling;
  double output_offset = 0.0;
  double output_scale = 1.0;
  TrainReport report;
  std::vector<EpochRecord> telemetry;  // not serialized

  std::size_t input_dim() const { return spec.input_dim; }
};

/// Builds an untrained network with normal(0, init_std) weights, zero biases
/// and identity scaling.
SurrogateModel initialize(const NetworkSpec& spec);

double forward(const SurrogateModel& model, std::span<const double> x);
std::vector<double> predict(const SurrogateModel& model, const Samples& x, std::size_t threads = 1);

/// Adam on mean squared loss over min-max scaled data; deterministic for a
/// fixed spec.seed. Requires at least 10 rows.
SurrogateModel train(const NetworkSpec& spec, const Samples& x, std::span<const double> y);

ErrorSummary relative_error(std::span<const double> predicted, std::span<const double> actual,
                            double exclusion_threshold);

struct GradientCheckReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates near a ReLU kink
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Backpropagated gradient of the single-row squared loss against central
/// differences (h = 1e-5) on `samples` randomly drawn weights and biases.
/// Relative error is |g_bp - g_fd| / max(|g_bp|, |g_fd|, 1e-7).
GradientCheckReport gradient_check(const SurrogateModel& model, std::span<const double> x, double y,
                                   double tolerance, std::size_t samples, std::uint64_t seed);

/// Exact gradient of the single-row squared loss in scaled units, laid out
/// layer by layer as weights then biases.
std::vector<double> loss_gradient(const SurrogateModel& model, std::span<const double> x, double y);

std::string serialize(const SurrogateModel& model);
SurrogateModel deserialize(std::string_view text);
void save_model(const SurrogateModel& model, const std::filesystem::path& path);
SurrogateModel load_model(const std::filesystem::path& path);

void save_telemetry_csv(const SurrogateModel& model, const std::filesystem::path& path);

struct GridSearchResult {
  std::vector<std::vector<std::size_t>> architectures;
  std::vector<double> test_mae_pct;
  std::size_t best = 0;
  SurrogateModel model;  // trained with architectures[best]
};

/// Trains one network per listed hidden-layer architecture and keeps the one
/// with the lowest held-out MAE% (first wins ties).
GridSearchResult grid_search(const NetworkSpec& base, const std::vector<std::vector<std::size_t>>& architectures,
                             const Samples& x, std::span<const double> y);

}  // namespace srdsm
