#include "iplab/nn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "iplab/error.hpp"

namespace iplab::nn {

namespace {
double clip(double p) { return std::clamp(p, kProbabilityClip, 1.0 - kProbabilityClip); }
}  // namespace

double cross_entropy(const Tensor& y_true, const Tensor& y_pred, LossMode mode) {
  if (y_true.size() != y_pred.size()) {
    throw DimensionError("cross_entropy: targets " + numerics::shape_string(y_true.shape()) + " vs predictions " +
                         numerics::shape_string(y_pred.shape()));
  }
  if (y_true.empty()) throw EmptyInputError("cross_entropy of an empty batch");
  double total = 0.0;
  std::size_t batch = 0;
  if (mode == LossMode::binary) {
    batch = y_true.size();
    for (std::size_t i = 0; i < batch; ++i) {
      const double p = clip(y_pred[i]);
      const double y = y_true[i];
      total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    }
  } else {
    if (y_true.rank() != 2) throw DimensionError("categorical cross_entropy expects [batch x classes]");
    batch = y_true.rows();
    for (std::size_t i = 0; i < y_true.size(); ++i) {
      if (y_true[i] != 0.0) total -= y_true[i] * std::log(clip(y_pred[i]));
    }
  }
  return std::max(0.0, total / static_cast<double>(batch));
}

Tensor sgd_step(const Tensor& w, const Tensor& grad, double lr) {
  Tensor out = w;
  sgd_step_inplace(out, grad, lr);
  return out;
}

void sgd_step_inplace(Tensor& w, const Tensor& grad, double lr) {
  if (w.shape() != grad.shape()) {
    throw DimensionError("sgd_step: weights " + numerics::shape_string(w.shape()) + " vs gradient " +
                         numerics::shape_string(grad.shape()));
  }
  if (!(lr > 0.0)) throw ParameterError("learning rate must be > 0");
  auto wv = w.values();
  const auto gv = grad.values();
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] -= lr * gv[i];
}

}  // namespace iplab::nn
