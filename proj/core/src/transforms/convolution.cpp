#include "iplab/transforms/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "iplab/error.hpp"
#include "iplab/transforms/fft.hpp"

namespace iplab::transforms {

namespace {
void require_equal_vectors(const Tensor& x, const Tensor& h) {
  if (x.rank() != 1 || h.rank() != 1 || x.size() != h.size()) {
    throw DimensionError("convolution operands must be equal-length vectors: " +
                         numerics::shape_string(x.shape()) + " vs " + numerics::shape_string(h.shape()));
  }
  if (x.empty()) throw EmptyInputError("convolution of empty vectors");
}
}  // namespace

Tensor direct_convolution(const Tensor& x, const Tensor& h, ConvolutionMode) {
  require_equal_vectors(x, h);
  const std::size_t n = x.size();
  Tensor y({n});
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += x[j] * h[(k + n - j) % n];
    y[k] = sum;
  }
  return y;
}

Tensor fft_convolution(const Tensor& x, const Tensor& h) {
  require_equal_vectors(x, h);
  const std::size_t n = x.size();
  auto fx = dft(numerics::ComplexTensor::from_real(x), Direction::forward);
  auto fh = dft(numerics::ComplexTensor::from_real(h), Direction::forward);
  numerics::ComplexTensor prod(Tensor({n}), Tensor({n}));
  for (std::size_t k = 0; k < n; ++k) {
    prod.re[k] = fx.re[k] * fh.re[k] - fx.im[k] * fh.im[k];
    prod.im[k] = fx.re[k] * fh.im[k] + fx.im[k] * fh.re[k];
  }
  auto y = dft(prod, Direction::inverse);
  double peak = 1.0, residue = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    peak = std::max(peak, std::abs(y.re[k]));
    residue = std::max(residue, std::abs(y.im[k]));
  }
  if (residue > 1e-9 * peak) {
    throw NumericIntegrityError("fft_convolution imaginary residue " + std::to_string(residue));
  }
  return std::move(y.re);
}

}  // namespace iplab::transforms
