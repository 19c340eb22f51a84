#pragma once

#include <cstddef>

#include "iplab/numerics/tensor.hpp"

namespace iplab::transforms {

using numerics::ComplexTensor;
using numerics::Tensor;

enum class Direction { forward, inverse };

/// Discrete Fourier transform of a length-n complex vector.
///
/// Forward is the unnormalized sum X[k] = sum_j x[j] e^{-2 pi i jk/n}; inverse
/// applies the 1/n factor. Power-of-two lengths use an iterative radix-2 FFT,
/// other lengths a direct O(n^2) sum. Throws EmptyInputError for n == 0.
ComplexTensor dft(const ComplexTensor& x, Direction direction);

/// Row-wise DFT of a batch [b x n] using precomputed cos/sin matrices.
///
/// O(n^2) per row, but the work is a dense matrix product, which is what the
/// spectral layers need for small n.
class DftMatrix {
 public:
  explicit DftMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// Forward transform of real rows.
  ComplexTensor forward_real(const Tensor& x) const;
  /// Inverse transform (with 1/n), both planes of the result.
  ComplexTensor inverse(const ComplexTensor& spectrum) const;
  /// Real plane of the inverse transform only.
  Tensor inverse_real(const ComplexTensor& spectrum) const;

 private:
  std::size_t n_;
  Tensor cos_;  // cos(2 pi jk / n), symmetric
  Tensor sin_;  // sin(2 pi jk / n), symmetric
};

}  // namespace iplab::transforms
