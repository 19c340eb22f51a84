#include "iplab/transforms/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "../eigen_map.hpp"
#include "iplab/error.hpp"

namespace iplab::transforms {

namespace {

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

// Twiddles e^{sign * 2 pi i k / n} evaluated per index (no recurrence drift).
void twiddles(std::size_t n, std::size_t count, double sign, std::vector<double>& c, std::vector<double>& s) {
  c.resize(count);
  s.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    c[k] = std::cos(angle);
    s[k] = std::sin(angle);
  }
}

void radix2(std::vector<double>& re, std::vector<double>& im, double sign) {
  const std::size_t n = re.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  std::vector<double> wc, ws;
  twiddles(n, n / 2, sign, wc, ws);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const double cr = wc[k * step];
        const double ci = ws[k * step];
        const std::size_t a = start + k;
        const std::size_t b = a + half;
        const double tr = re[b] * cr - im[b] * ci;
        const double ti = re[b] * ci + im[b] * cr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
      }
    }
  }
}

void direct(std::vector<double>& re, std::vector<double>& im, double sign) {
  const std::size_t n = re.size();
  std::vector<double> wc, ws;
  twiddles(n, n, sign, wc, ws);
  std::vector<double> out_re(n, 0.0), out_im(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = (j * k) % n;
      sr += re[j] * wc[idx] - im[j] * ws[idx];
      si += re[j] * ws[idx] + im[j] * wc[idx];
    }
    out_re[k] = sr;
    out_im[k] = si;
  }
  re.swap(out_re);
  im.swap(out_im);
}

}  // namespace

ComplexTensor dft(const ComplexTensor& x, Direction direction) {
  const std::size_t n = x.size();
  if (n == 0) throw EmptyInputError("dft of an empty vector");
  if (x.re.rank() != 1) throw DimensionError("dft expects a vector, got " + numerics::shape_string(x.shape()));
  std::vector<double> re(x.re.values().begin(), x.re.values().end());
  std::vector<double> im(x.im.values().begin(), x.im.values().end());
  const double sign = direction == Direction::forward ? -1.0 : 1.0;
  if (is_power_of_two(n)) {
    radix2(re, im, sign);
  } else {
    direct(re, im, sign);
  }
  if (direction == Direction::inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] *= inv;
      im[i] *= inv;
    }
  }
  return ComplexTensor(Tensor({n}, std::move(re)), Tensor({n}, std::move(im)));
}

DftMatrix::DftMatrix(std::size_t n) : n_(n), cos_({n, n}), sin_({n, n}) {
  if (n == 0) throw EmptyInputError("DftMatrix of size 0");
  std::vector<double> wc, ws;
  twiddles(n, n, 1.0, wc, ws);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (j * k) % n;
      cos_.at(j, k) = wc[idx];
      sin_.at(j, k) = ws[idx];
    }
  }
}

ComplexTensor DftMatrix::forward_real(const Tensor& x) const {
  if (x.rank() != 2 || x.cols() != n_) {
    throw DimensionError("DftMatrix(" + std::to_string(n_) + ") applied to " + numerics::shape_string(x.shape()));
  }
  Tensor re({x.rows(), n_}), im({x.rows(), n_});
  auto xm = detail::as_matrix(x);
  // X[k] = sum_j x[j] (cos - i sin)
  detail::as_matrix(re).noalias() = xm * detail::as_matrix(cos_);
  detail::as_matrix(im).noalias() = -(xm * detail::as_matrix(sin_));
  return ComplexTensor(std::move(re), std::move(im));
}

ComplexTensor DftMatrix::inverse(const ComplexTensor& spectrum) const {
  if (spectrum.re.rank() != 2 || spectrum.re.cols() != n_) {
    throw DimensionError("DftMatrix(" + std::to_string(n_) + ") inverse of " +
                         numerics::shape_string(spectrum.shape()));
  }
  const double inv = 1.0 / static_cast<double>(n_);
  Tensor re({spectrum.re.rows(), n_}), im({spectrum.re.rows(), n_});
  auto yr = detail::as_matrix(spectrum.re);
  auto yi = detail::as_matrix(spectrum.im);
  auto c = detail::as_matrix(cos_);
  auto s = detail::as_matrix(sin_);
  // x[j] = (1/n) sum_k Y[k] (cos + i sin)
  detail::as_matrix(re).noalias() = (yr * c - yi * s) * inv;
  detail::as_matrix(im).noalias() = (yr * s + yi * c) * inv;
  return ComplexTensor(std::move(re), std::move(im));
}

Tensor DftMatrix::inverse_real(const ComplexTensor& spectrum) const {
  if (spectrum.re.rank() != 2 || spectrum.re.cols() != n_) {
    throw DimensionError("DftMatrix(" + std::to_string(n_) + ") inverse of " +
                         numerics::shape_string(spectrum.shape()));
  }
  const double inv = 1.0 / static_cast<double>(n_);
  Tensor re({spectrum.re.rows(), n_});
  detail::as_matrix(re).noalias() =
      (detail::as_matrix(spectrum.re) * detail::as_matrix(cos_) - detail::as_matrix(spectrum.im) * detail::as_matrix(sin_)) * inv;
  return re;
}

}  // namespace iplab::transforms
