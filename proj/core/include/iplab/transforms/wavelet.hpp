#pragma once

#include <array>
#include <vector>

#include "iplab/numerics/tensor.hpp"

namespace iplab::transforms {

using numerics::Tensor;

enum class WaveletFamily { daubechies4, morlet };
enum class Boundary { periodic };

struct WaveletSpec {
  WaveletFamily family = WaveletFamily::morlet;
  double scale = 1.0;  // morlet only
  Boundary boundary = Boundary::periodic;
};

/// Real Morlet mother wavelet e^{-t^2/2} cos(5 t).
double morlet(double t) noexcept;

/// Sampled kernel psi(m / s) / sqrt(s) for m in [-half_width, half_width].
/// half_width = ceil(8 s).
std::vector<double> morlet_kernel(double scale);

/// Single-scale continuous wavelet transform: same-length correlation of x
/// with the sampled Morlet kernel, zero beyond the signal ends.
/// y[k] = sum_m x[k + m] psi(m / s) / sqrt(s).
Tensor morlet_cwt(const Tensor& x, const WaveletSpec& spec);

/// Daubechies-4 (two vanishing moments) analysis low-pass filter; sums to sqrt(2).
const std::array<double, 4>& daubechies4_lowpass() noexcept;
/// Quadrature-mirror high-pass g[k] = (-1)^k h[3 - k]; sums to 0.
const std::array<double, 4>& daubechies4_highpass() noexcept;

struct DwtCoefficients {
  Tensor approx;
  Tensor detail;
};

/// One-level periodized D4 analysis of an even-length vector.
DwtCoefficients dwt_daubechies4(const Tensor& x);
/// Exact inverse of dwt_daubechies4.
Tensor idwt_daubechies4(const DwtCoefficients& coeffs);

/// Row-wise D4 analysis of [b x n]; each output row is approx || detail.
Tensor dwt_rows(const Tensor& x);
/// Row-wise inverse of dwt_rows.
Tensor idwt_rows(const Tensor& coeffs);

}  // namespace iplab::transforms
