#include "iplab/nn/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "iplab/error.hpp"

namespace iplab::nn {

namespace {

constexpr std::size_t kEvalBatch = 256;

Tensor gather_rows(const Tensor& samples, std::span<const std::size_t> idx) {
  const std::size_t w = samples.cols();
  Tensor out({idx.size(), w});
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto src = samples.row(idx[r]);
    std::copy(src.begin(), src.end(), out.data() + r * w);
  }
  return out;
}

Tensor slice_rows(const Tensor& samples, std::size_t begin, std::size_t end) {
  const std::size_t w = samples.cols();
  std::vector<double> data(samples.data() + begin * w, samples.data() + end * w);
  return Tensor({end - begin, w}, std::move(data));
}

bool weights_finite(const Model& model) {
  for (const auto& layer : model.layers()) {
    const auto& params = std::visit([](const auto& l) -> const std::vector<Tensor>& { return l.params(); }, layer);
    for (const auto& p : params) {
      if (!p.all_finite()) return false;
    }
  }
  return true;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

}  // namespace

void validate(const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) throw ParameterError("learning rate must be > 0");
  if (cfg.max_epochs < 1) throw ParameterError("max_epochs must be >= 1");
  if (cfg.batch_size < 1) throw ParameterError("batch_size must be >= 1");
  if (cfg.early_stop.patience < 1) throw ParameterError("patience must be >= 1");
  if (cfg.early_stop.min_delta < 0.0) throw ParameterError("min_delta must be >= 0");
  if (!(cfg.init_stddev > 0.0)) throw ParameterError("init stddev must be > 0");
}

EarlyStopping::EarlyStopping(EarlyStopConfig cfg)
    : cfg_(cfg), best_(std::numeric_limits<double>::infinity()) {}

bool EarlyStopping::observe(double loss) {
  if (best_ - loss >= cfg_.min_delta) {
    best_ = loss;
    wait_ = 0;
    return false;
  }
  return ++wait_ >= cfg_.patience;
}

TrainResult fit(const ModelSpec& spec, const Tensor& samples, std::span<const int> labels, const TrainConfig& cfg,
                const EpochCallback& on_epoch) {
  validate(cfg);
  if (samples.rank() != 2) throw DimensionError("samples must be [n x d]");
  if (samples.rows() == 0) throw EmptyInputError("no training samples");
  if (samples.rows() != labels.size()) {
    throw DimensionError(std::to_string(samples.rows()) + " samples but " + std::to_string(labels.size()) +
                         " labels");
  }

  TrainResult result{Model(spec), {}, 0, false, 0.0, 0};
  Model& model = result.model;
  SeededRng init_rng(numerics::derive_seed(cfg.seed, 0));
  model.initialize(init_rng, cfg.init_stddev);
  SeededRng order_rng(numerics::derive_seed(cfg.seed, 1));

  const Tensor targets = make_targets(labels, spec.output);
  const std::size_t n = samples.rows();
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  const auto traced = model.traced_layers();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Gradients grads = model.zero_gradients();
  EarlyStopping stopper(cfg.early_stop);
  double total_step_us = 0.0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    order_rng.shuffle(order.begin(), order.end());
    std::vector<Moments> moments(traced.size());
    double loss_sum = 0.0;

    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      const Tensor xb = gather_rows(samples, idx);
      const Tensor yb = gather_rows(targets, idx);

      const auto t0 = std::chrono::steady_clock::now();
      const double loss = model.loss_and_gradients(xb, yb, grads);
      if (!std::isfinite(loss)) throw TrainingDivergedError(epoch, "loss is not finite");
      model.apply_sgd(grads, cfg.learning_rate);
      const auto t1 = std::chrono::steady_clock::now();
      total_step_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
      ++result.steps;

      loss_sum += loss * static_cast<double>(end - start);
      for (std::size_t k = 0; k < traced.size(); ++k) {
        for (const auto& g : grads[traced[k]]) {
          for (double v : g.values()) {
            moments[k].sum += v;
            moments[k].sum_sq += v * v;
          }
          moments[k].count += g.size();
        }
      }
    }
    if (!weights_finite(model)) throw TrainingDivergedError(epoch, "a weight is not finite");

    const double epoch_loss = loss_sum / static_cast<double>(n);
    const double acc = cfg.track_train_accuracy ? evaluate_accuracy(model, samples, labels)
                                                : std::numeric_limits<double>::quiet_NaN();
    result.history.push_back({epoch, epoch_loss, acc});
    result.epochs_run = epoch;

    if (on_epoch) {
      std::vector<GradientSummary> summaries(traced.size());
      for (std::size_t k = 0; k < traced.size(); ++k) {
        const auto& m = moments[k];
        if (m.count == 0) continue;
        const double c = static_cast<double>(m.count);
        const double mean = m.sum / c;
        summaries[k] = {mean, std::sqrt(std::max(0.0, m.sum_sq / c - mean * mean)), m.count};
      }
      on_epoch(EpochContext{epoch, epoch_loss, model, summaries});
    }

    if (cfg.early_stop.enabled && stopper.observe(epoch_loss)) {
      result.early_stopped = true;
      break;
    }
  }
  result.mean_step_time_us = total_step_us / static_cast<double>(result.steps);
  return result;
}

int decide_class(std::span<const double> probs) noexcept {
  if (probs.size() == 1) return probs[0] >= 0.5 ? 1 : 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  return static_cast<int>(best);
}

std::vector<int> predict_classes(const Model& model, const Tensor& samples) {
  if (samples.rank() != 2) throw DimensionError("samples must be [n x d]");
  std::vector<int> out;
  out.reserve(samples.rows());
  for (std::size_t start = 0; start < samples.rows(); start += kEvalBatch) {
    const std::size_t end = std::min(samples.rows(), start + kEvalBatch);
    const Tensor probs = model.predict(slice_rows(samples, start, end));
    for (std::size_t r = 0; r < probs.rows(); ++r) out.push_back(decide_class(probs.row(r)));
  }
  return out;
}

double evaluate_accuracy(const Model& model, const Tensor& samples, std::span<const int> labels) {
  if (samples.rank() != 2 || samples.rows() != labels.size()) {
    throw DimensionError("samples and labels differ in length");
  }
  if (labels.empty()) throw EmptyInputError("no samples to evaluate");
  const auto pred = predict_classes(model, samples);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

}  // namespace iplab::nn
