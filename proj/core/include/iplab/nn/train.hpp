#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "iplab/nn/model.hpp"

namespace iplab::nn {

struct EarlyStopConfig {
  bool enabled = false;
  double min_delta = 0.001;
  int patience = 2;
};

struct TrainConfig {
  double learning_rate = 0.001;
  int max_epochs = 30;
  int batch_size = 32;
  EarlyStopConfig early_stop;
  std::uint64_t seed = 0;
  double init_stddev = 0.05;
  /// Extra forward pass over the training set after every epoch.
  bool track_train_accuracy = true;
};

/// Throws ParameterError on lr <= 0, epochs < 1, batch < 1 or patience < 1.
void validate(const TrainConfig& cfg);

/// Stops once the monitored loss has failed to decrease below the best value
/// seen by `min_delta` or more for `patience` consecutive epochs.
class EarlyStopping {
 public:
  explicit EarlyStopping(EarlyStopConfig cfg);
  /// Records one epoch's loss; returns true when training should stop.
  bool observe(double loss);
  int wait() const noexcept { return wait_; }
  double best() const noexcept { return best_; }

 private:
  EarlyStopConfig cfg_;
  double best_;
  int wait_ = 0;
};

/// Mean and population std of every gradient entry of one layer, pooled over
/// all optimizer steps of an epoch.
struct GradientSummary {
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t count = 0;
};

struct EpochContext {
  int epoch;  // 1-based
  double loss;
  const Model& model;
  std::span<const GradientSummary> gradients;  // parallel to Model::traced_layers()
};

using EpochCallback = std::function<void(const EpochContext&)>;

struct EpochRecord {
  int epoch;
  double loss;
  double train_accuracy;  // NaN when not tracked
};

struct TrainResult {
  Model model;
  std::vector<EpochRecord> history;
  int epochs_run = 0;
  bool early_stopped = false;
  double mean_step_time_us = 0.0;
  std::uint64_t steps = 0;
};

/// Mini-batch SGD on (samples, labels). Deterministic given cfg.seed.
/// `on_epoch` may observe but never alters training.
/// Throws TrainingDivergedError when the loss or a weight becomes non-finite.
TrainResult fit(const ModelSpec& spec, const Tensor& samples, std::span<const int> labels, const TrainConfig& cfg,
                const EpochCallback& on_epoch = {});

/// Predicted class per row: p >= 0.5 gives 1 for a sigmoid head, argmax
/// (lowest index on ties) for softmax.
std::vector<int> predict_classes(const Model& model, const Tensor& samples);

/// Fraction of rows whose predicted class equals the label.
double evaluate_accuracy(const Model& model, const Tensor& samples, std::span<const int> labels);

/// Class decision rule for a single probability row.
int decide_class(std::span<const double> probs) noexcept;

}  // namespace iplab::nn
