#include "iplab/transforms/wavelet.hpp"

#include <cmath>

#include "iplab/error.hpp"

namespace iplab::transforms {

namespace {

constexpr double kMorletCenter = 5.0;
constexpr double kMorletSupport = 8.0;

void require_even_vector(const Tensor& x) {
  if (x.rank() != 1) throw DimensionError("D4 DWT expects a vector, got " + numerics::shape_string(x.shape()));
  if (x.size() < 2 || x.size() % 2 != 0) {
    throw DimensionError("D4 DWT needs an even length >= 2, got " + std::to_string(x.size()));
  }
}

// One row of analysis: out[0..h) approx, out[h..n) detail.
void analyze(const double* x, double* out, std::size_t n) {
  const auto& lo = daubechies4_lowpass();
  const auto& hi = daubechies4_highpass();
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double v = x[(2 * i + k) % n];
      a += lo[k] * v;
      d += hi[k] * v;
    }
    out[i] = a;
    out[half + i] = d;
  }
}

void synthesize(const double* coeffs, double* x, std::size_t n) {
  const auto& lo = daubechies4_lowpass();
  const auto& hi = daubechies4_highpass();
  const std::size_t half = n / 2;
  for (std::size_t j = 0; j < n; ++j) x[j] = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    const double a = coeffs[i];
    const double d = coeffs[half + i];
    for (std::size_t k = 0; k < 4; ++k) x[(2 * i + k) % n] += lo[k] * a + hi[k] * d;
  }
}

}  // namespace

double morlet(double t) noexcept { return std::exp(-0.5 * t * t) * std::cos(kMorletCenter * t); }

std::vector<double> morlet_kernel(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("morlet scale must be > 0");
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(kMorletSupport * scale));
  const double norm = 1.0 / std::sqrt(scale);
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  for (std::ptrdiff_t m = -half; m <= half; ++m) {
    kernel[static_cast<std::size_t>(m + half)] = morlet(static_cast<double>(m) / scale) * norm;
  }
  return kernel;
}

Tensor morlet_cwt(const Tensor& x, const WaveletSpec& spec) {
  if (spec.family != WaveletFamily::morlet) throw ParameterError("morlet_cwt requires a morlet wavelet spec");
  if (x.rank() != 1) throw DimensionError("morlet_cwt expects a vector, got " + numerics::shape_string(x.shape()));
  const auto kernel = morlet_kernel(spec.scale);
  const auto half = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  Tensor y({x.size()});
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::ptrdiff_t m = -half; m <= half; ++m) {
      const std::ptrdiff_t idx = k + m;
      if (idx < 0 || idx >= n) continue;
      sum += x[static_cast<std::size_t>(idx)] * kernel[static_cast<std::size_t>(m + half)];
    }
    y[static_cast<std::size_t>(k)] = sum;
  }
  return y;
}

const std::array<double, 4>& daubechies4_lowpass() noexcept {
  static const std::array<double, 4> h = [] {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return std::array<double, 4>{(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d};
  }();
  return h;
}

const std::array<double, 4>& daubechies4_highpass() noexcept {
  static const std::array<double, 4> g = [] {
    const auto& h = daubechies4_lowpass();
    return std::array<double, 4>{h[3], -h[2], h[1], -h[0]};
  }();
  return g;
}

DwtCoefficients dwt_daubechies4(const Tensor& x) {
  require_even_vector(x);
  const std::size_t n = x.size();
  std::vector<double> out(n);
  analyze(x.data(), out.data(), n);
  DwtCoefficients c{Tensor({n / 2}), Tensor({n / 2})};
  std::copy(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n / 2), c.approx.data());
  std::copy(out.begin() + static_cast<std::ptrdiff_t>(n / 2), out.end(), c.detail.data());
  return c;
}

Tensor idwt_daubechies4(const DwtCoefficients& coeffs) {
  if (coeffs.approx.rank() != 1 || coeffs.approx.shape() != coeffs.detail.shape() || coeffs.approx.empty()) {
    throw DimensionError("idwt needs equal-length approx/detail vectors");
  }
  const std::size_t half = coeffs.approx.size();
  std::vector<double> packed(2 * half);
  std::copy(coeffs.approx.values().begin(), coeffs.approx.values().end(), packed.begin());
  std::copy(coeffs.detail.values().begin(), coeffs.detail.values().end(),
            packed.begin() + static_cast<std::ptrdiff_t>(half));
  Tensor x({2 * half});
  synthesize(packed.data(), x.data(), 2 * half);
  return x;
}

Tensor dwt_rows(const Tensor& x) {
  const std::size_t n = x.cols();
  if (n < 2 || n % 2 != 0) throw DimensionError("D4 DWT needs an even row length >= 2, got " + std::to_string(n));
  Tensor out(x.shape());
  for (std::size_t r = 0; r < x.rows(); ++r) analyze(x.data() + r * n, out.data() + r * n, n);
  return out;
}

Tensor idwt_rows(const Tensor& coeffs) {
  const std::size_t n = coeffs.cols();
  if (n < 2 || n % 2 != 0) throw DimensionError("D4 IDWT needs an even row length >= 2, got " + std::to_string(n));
  Tensor out(coeffs.shape());
  for (std::size_t r = 0; r < coeffs.rows(); ++r) synthesize(coeffs.data() + r * n, out.data() + r * n, n);
  return out;
}

}  // namespace iplab::transforms
