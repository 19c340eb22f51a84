#pragma once

#include <string_view>

#include "iplab/numerics/tensor.hpp"

namespace iplab::nn {

using numerics::Tensor;

enum class Activation { relu, sigmoid, heaviside, softmax, none };

std::string_view to_string(Activation a) noexcept;
/// Throws ParameterError for unknown names.
Activation activation_from_string(std::string_view name);

/// Elementwise activation; softmax normalizes each row of a matrix (a vector
/// is treated as one row). Heaviside maps 0 to 1.
Tensor activation_apply(Activation kind, const Tensor& z);

/// dL/dz given dL/da, the pre-activation z and the activation output a.
/// Heaviside has zero derivative almost everywhere.
Tensor activation_backward(Activation kind, const Tensor& z, const Tensor& a, const Tensor& grad_a);

}  // namespace iplab::nn
