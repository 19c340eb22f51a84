#pragma once

#include "iplab/numerics/tensor.hpp"

namespace iplab::transforms {

using numerics::Tensor;

enum class ConvolutionMode { circular };

/// y[k] = sum_j x[j] h[(k - j) mod n], evaluated term by term.
Tensor direct_convolution(const Tensor& x, const Tensor& h, ConvolutionMode mode = ConvolutionMode::circular);

/// Circular convolution via the convolution theorem: IDFT(DFT(x) * DFT(h)).
/// Throws NumericIntegrityError if the imaginary residue exceeds
/// 1e-9 * max(1, max|y|).
Tensor fft_convolution(const Tensor& x, const Tensor& h);

}  // namespace iplab::transforms
