#include "iplab/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "../eigen_map.hpp"
#include "iplab/error.hpp"
#include "iplab/numerics/ops.hpp"
#include "iplab/transforms/wavelet.hpp"

namespace iplab::nn {

namespace {

using detail::as_matrix;
using StridedMap = Eigen::Map<const detail::RowMatrix, 0, Eigen::OuterStride<>>;

void require_input(const Tensor& x, std::size_t width, const char* layer) {
  if (x.rank() != 2 || x.cols() != width) {
    throw DimensionError(std::string(layer) + " expects [batch x " + std::to_string(width) + "], got " +
                         numerics::shape_string(x.shape()));
  }
}

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Plain row-order loop: Eigen's vectorised reductions pick their summation
// order from the buffer's alignment, which would make runs differ bitwise.
void add_column_sums(const double* g, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[c] += g[r * cols + c];
}

// W = (V + R V) / 2 with (R V)[k][j] = V[-k][-j] (indices mod n).
Tensor conjugate_symmetrize(const Tensor& v) {
  const std::size_t n = v.rows();
  Tensor w({n, n});
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rk = (n - k) % n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t rj = (n - j) % n;
      w.at(k, j) = 0.5 * (v.at(k, j) + v.at(rk, rj));
    }
  }
  return w;
}

}  // namespace

std::string_view to_string(LayerKind k) noexcept {
  switch (k) {
    case LayerKind::dense: return "dense";
    case LayerKind::conv1d: return "conv1d";
    case LayerKind::fourier: return "fourier";
    case LayerKind::wavelet: return "wavelet";
    case LayerKind::flatten: return "flatten";
  }
  return "dense";
}

// ---------------------------------------------------------------------------
// Dense

DenseLayer::DenseLayer(FeatureShape in, std::size_t units, Activation act)
    : in_(in.width()), units_(units), act_(act) {
  if (units == 0) throw ParameterError("dense layer needs units >= 1");
  if (in.channels != 1) throw DimensionError("dense layer after a multi-channel layer needs a flatten first");
  params_ = {Tensor({in_, units_}), Tensor({units_})};
}

Tensor DenseLayer::forward_linear(const Tensor& x, LayerCache* cache) const {
  require_input(x, in_, "dense layer");
  Tensor z({x.rows(), units_});
  auto zm = as_matrix(z);
  zm.noalias() = as_matrix(x) * as_matrix(params_[0]);
  zm.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(params_[1].data(), idx(units_));
  if (cache) cache->input = x;
  return z;
}

Tensor DenseLayer::backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const {
  auto g = as_matrix(grad_pre);
  as_matrix(grads[0]).noalias() += as_matrix(cache.input).transpose() * g;
  add_column_sums(grad_pre.data(), grad_pre.rows(), units_, grads[1].data());
  Tensor gx({grad_pre.rows(), in_});
  as_matrix(gx).noalias() = g * as_matrix(params_[0]).transpose();
  return gx;
}

void DenseLayer::initialize(SeededRng& rng, double stddev) {
  params_[0] = numerics::normal_init(rng, {in_, units_}, stddev);
  params_[1] = Tensor({units_});
}

// ---------------------------------------------------------------------------
// Conv1d

Conv1dLayer::Conv1dLayer(FeatureShape in, std::size_t filters, std::size_t kernel, std::size_t stride, Activation act)
    : in_(in), filters_(filters), kernel_(kernel), stride_(stride), act_(act) {
  if (filters == 0) throw ParameterError("conv1d needs filters >= 1");
  if (stride == 0) throw ParameterError("conv1d needs stride >= 1");
  if (kernel == 0) throw ParameterError("conv1d needs kernel >= 1");
  if (kernel > in.length) {
    throw DimensionError("conv1d kernel " + std::to_string(kernel) + " exceeds input length " +
                         std::to_string(in.length));
  }
  out_len_ = (in.length - kernel) / stride + 1;
  params_ = {Tensor({filters_, kernel_ * in_.channels}), Tensor({filters_})};
}

namespace {

// Samples per GEMM so that the stacked window matrix has about this many rows.
constexpr std::size_t kConvRowsPerGemm = 4096;

std::size_t conv_chunk(std::size_t out_len) { return std::max<std::size_t>(1, kConvRowsPerGemm / out_len); }

// Windows of samples [b0, b1) stacked into one [(b1-b0)*out_len x window]
// matrix; row t of sample b starts at x[b][t * step].
detail::RowMatrix stack_windows(const Tensor& x, std::size_t b0, std::size_t b1, std::size_t out_len,
                                std::size_t window, std::size_t step) {
  const std::size_t width = x.cols();
  detail::RowMatrix cols(idx((b1 - b0) * out_len), idx(window));
  for (std::size_t b = b0; b < b1; ++b) {
    cols.middleRows(idx((b - b0) * out_len), idx(out_len)) =
        StridedMap(x.data() + b * width, idx(out_len), idx(window), Eigen::OuterStride<>(idx(step)));
  }
  return cols;
}

}  // namespace

Tensor Conv1dLayer::forward_linear(const Tensor& x, LayerCache* cache) const {
  require_input(x, in_.width(), "conv1d layer");
  const std::size_t batch = x.rows();
  Tensor z({batch, out_len_ * filters_});
  auto k = as_matrix(params_[0]);
  Eigen::Map<const Eigen::RowVectorXd> bias(params_[1].data(), idx(filters_));
  const std::size_t chunk = conv_chunk(out_len_);
  for (std::size_t b0 = 0; b0 < batch; b0 += chunk) {
    const std::size_t b1 = std::min(batch, b0 + chunk);
    detail::MatMap out(z.data() + b0 * out_len_ * filters_, idx((b1 - b0) * out_len_), idx(filters_));
    out.noalias() = stack_windows(x, b0, b1, out_len_, kernel_ * in_.channels, stride_ * in_.channels) * k.transpose();
    out.rowwise() += bias;
  }
  if (cache) cache->input = x;
  return z;
}

Tensor Conv1dLayer::backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const {
  const Tensor& x = cache.input;
  const std::size_t batch = x.rows();
  const std::size_t window = kernel_ * in_.channels;
  const std::size_t step = stride_ * in_.channels;
  auto k = as_matrix(params_[0]);
  auto dk = as_matrix(grads[0]);
  Tensor gx({batch, in_.width()});
  add_column_sums(grad_pre.data(), batch * out_len_, filters_, grads[1].data());
  const std::size_t chunk = conv_chunk(out_len_);
  for (std::size_t b0 = 0; b0 < batch; b0 += chunk) {
    const std::size_t b1 = std::min(batch, b0 + chunk);
    detail::ConstMatMap g(grad_pre.data() + b0 * out_len_ * filters_, idx((b1 - b0) * out_len_), idx(filters_));
    dk.noalias() += g.transpose() * stack_windows(x, b0, b1, out_len_, window, step);
    const detail::RowMatrix dcols = g * k;
    for (std::size_t b = b0; b < b1; ++b) {
      double* gxb = gx.data() + b * in_.width();
      for (std::size_t t = 0; t < out_len_; ++t) {
        Eigen::Map<Eigen::RowVectorXd>(gxb + t * step, idx(window)) += dcols.row(idx((b - b0) * out_len_ + t));
      }
    }
  }
  return gx;
}

void Conv1dLayer::initialize(SeededRng& rng, double stddev) {
  params_[0] = numerics::normal_init(rng, params_[0].shape(), stddev);
  params_[1] = Tensor({filters_});
}

// ---------------------------------------------------------------------------
// Fourier

FourierLayer::FourierLayer(FeatureShape in, Activation act) : n_(in.width()), act_(act) {
  if (in.channels != 1) throw DimensionError("fourier layer expects single-channel input");
  if (n_ == 0) throw DimensionError("fourier layer on zero-width input");
  dft_ = std::make_shared<const transforms::DftMatrix>(n_);
  params_ = {numerics::identity(n_)};
}

Tensor FourierLayer::spectral_weights() const { return conjugate_symmetrize(params_[0]); }

Tensor FourierLayer::forward_linear(const Tensor& x, LayerCache* cache) const {
  require_input(x, n_, "fourier layer");
  const Tensor w = spectral_weights();
  auto spectrum = dft_->forward_real(x);
  numerics::ComplexTensor mixed(Tensor(x.shape()), Tensor(x.shape()));
  as_matrix(mixed.re).noalias() = as_matrix(spectrum.re) * as_matrix(w).transpose();
  as_matrix(mixed.im).noalias() = as_matrix(spectrum.im) * as_matrix(w).transpose();
  auto out = dft_->inverse(mixed);
  double residue = 0.0;
  for (double v : out.im.values()) residue = std::max(residue, std::abs(v));
  if (residue > 1e-6) {
    throw NumericIntegrityError("fourier layer imaginary residue " + std::to_string(residue));
  }
  if (cache) {
    cache->input = x;
    cache->spectrum = std::move(spectrum);
  }
  return std::move(out.re);
}

Tensor FourierLayer::backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const {
  const Tensor w = spectral_weights();
  auto g_spec = dft_->forward_real(grad_pre);
  // dW = (1/n) (G_re^T X_re + G_im^T X_im); dV is its conjugate-symmetric part.
  Tensor dw({n_, n_});
  auto dwm = as_matrix(dw);
  dwm.noalias() = as_matrix(g_spec.re).transpose() * as_matrix(cache.spectrum.re);
  dwm.noalias() += as_matrix(g_spec.im).transpose() * as_matrix(cache.spectrum.im);
  dwm /= static_cast<double>(n_);
  as_matrix(grads[0]) += as_matrix(conjugate_symmetrize(dw));
  // dx = Re(IDFT(DFT(g) W))
  numerics::ComplexTensor back(Tensor(grad_pre.shape()), Tensor(grad_pre.shape()));
  as_matrix(back.re).noalias() = as_matrix(g_spec.re) * as_matrix(w);
  as_matrix(back.im).noalias() = as_matrix(g_spec.im) * as_matrix(w);
  return dft_->inverse_real(back);
}

void FourierLayer::initialize(SeededRng& rng, double stddev) {
  params_[0] = numerics::normal_init(rng, {n_, n_}, stddev);
}

// ---------------------------------------------------------------------------
// Wavelet

WaveletLayer::WaveletLayer(FeatureShape in, Activation act) : n_(in.width()), act_(act) {
  if (in.channels != 1) throw DimensionError("wavelet layer expects single-channel input");
  if (n_ < 2 || n_ % 2 != 0) throw DimensionError("wavelet layer needs an even width, got " + std::to_string(n_));
  params_ = {numerics::identity(n_)};
}

Tensor WaveletLayer::forward_linear(const Tensor& x, LayerCache* cache) const {
  require_input(x, n_, "wavelet layer");
  Tensor coeffs = transforms::dwt_rows(x);
  Tensor mixed(x.shape());
  as_matrix(mixed).noalias() = as_matrix(coeffs) * as_matrix(params_[0]).transpose();
  Tensor z = transforms::idwt_rows(mixed);
  if (cache) {
    cache->input = x;
    cache->coeffs = std::move(coeffs);
  }
  return z;
}

Tensor WaveletLayer::backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const {
  // The one-level transform T is orthonormal, so IDWT is T^T and the adjoint
  // of IDWT is DWT.
  Tensor g_mixed = transforms::dwt_rows(grad_pre);
  as_matrix(grads[0]).noalias() += as_matrix(g_mixed).transpose() * as_matrix(cache.coeffs);
  Tensor g_coeffs(grad_pre.shape());
  as_matrix(g_coeffs).noalias() = as_matrix(g_mixed) * as_matrix(params_[0]);
  return transforms::idwt_rows(g_coeffs);
}

void WaveletLayer::initialize(SeededRng& rng, double stddev) {
  params_[0] = numerics::normal_init(rng, {n_, n_}, stddev);
}

// ---------------------------------------------------------------------------

Layer make_layer(const LayerSpec& spec, FeatureShape in) {
  switch (spec.kind) {
    case LayerKind::dense:
      if (spec.units < 1) throw ParameterError("dense layer needs units >= 1");
      return DenseLayer(in, static_cast<std::size_t>(spec.units), spec.activation);
    case LayerKind::conv1d:
      if (spec.units < 1 || spec.kernel < 1 || spec.stride < 1) {
        throw ParameterError("conv1d needs filters, kernel and stride >= 1");
      }
      return Conv1dLayer(in, static_cast<std::size_t>(spec.units), static_cast<std::size_t>(spec.kernel),
                         static_cast<std::size_t>(spec.stride), spec.activation);
    case LayerKind::fourier:
      return FourierLayer(in, spec.activation);
    case LayerKind::wavelet:
      return WaveletLayer(in, spec.activation);
    case LayerKind::flatten:
      return FlattenLayer(in);
  }
  throw ParameterError("unknown layer kind");
}

LayerKind kind_of(const Layer& layer) noexcept {
  switch (layer.index()) {
    case 0: return LayerKind::dense;
    case 1: return LayerKind::conv1d;
    case 2: return LayerKind::fourier;
    case 3: return LayerKind::wavelet;
    default: return LayerKind::flatten;
  }
}

}  // namespace iplab::nn
