#pragma once

#include "iplab/numerics/tensor.hpp"

namespace iplab::nn {

using numerics::Tensor;

enum class LossMode { binary, categorical };

/// Predictions are clipped to [1e-12, 1 - 1e-12] before taking logs.
inline constexpr double kProbabilityClip = 1e-12;

/// Mean cross-entropy over the batch, in nats.
///
/// binary: y_true and y_pred hold one probability per sample (any shape with
/// equal element counts). categorical: [batch x classes] with one-hot (or
/// soft) targets.
double cross_entropy(const Tensor& y_true, const Tensor& y_pred, LossMode mode);

/// w - lr * grad (plain SGD, no momentum).
Tensor sgd_step(const Tensor& w, const Tensor& grad, double lr);
void sgd_step_inplace(Tensor& w, const Tensor& grad, double lr);

}  // namespace iplab::nn
