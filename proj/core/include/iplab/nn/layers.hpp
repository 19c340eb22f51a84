#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "iplab/nn/activation.hpp"
#include "iplab/numerics/rng.hpp"
#include "iplab/numerics/tensor.hpp"
#include "iplab/transforms/fft.hpp"

namespace iplab::nn {

using numerics::SeededRng;
using numerics::Tensor;

enum class LayerKind { dense, conv1d, fourier, wavelet, flatten };

std::string_view to_string(LayerKind k) noexcept;

/// Declarative description of one layer. `units` is the neuron count for
/// dense layers and the filter count for conv1d; fourier and wavelet layers
/// keep their input width.
struct LayerSpec {
  LayerKind kind = LayerKind::dense;
  int units = 0;
  int kernel = 0;
  int stride = 1;
  Activation activation = Activation::relu;

  static LayerSpec dense(int units, Activation a = Activation::relu) { return {LayerKind::dense, units, 0, 1, a}; }
  static LayerSpec conv1d(int filters, int kernel, int stride = 1, Activation a = Activation::relu) {
    return {LayerKind::conv1d, filters, kernel, stride, a};
  }
  static LayerSpec fourier(Activation a = Activation::relu) { return {LayerKind::fourier, 0, 0, 1, a}; }
  static LayerSpec wavelet(Activation a = Activation::relu) { return {LayerKind::wavelet, 0, 0, 1, a}; }
  static LayerSpec flatten() { return {LayerKind::flatten, 0, 0, 1, Activation::none}; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Per-sample feature geometry: `length` positions of `channels` values, laid
/// out position-major (channel fastest).
struct FeatureShape {
  std::size_t length = 0;
  std::size_t channels = 1;
  std::size_t width() const noexcept { return length * channels; }
  friend bool operator==(const FeatureShape&, const FeatureShape&) = default;
};

/// Values a layer keeps from forward for its backward pass.
struct LayerCache {
  Tensor input;
  Tensor pre;   // pre-activation z
  Tensor post;  // activation output a
  numerics::ComplexTensor spectrum;  // fourier: DFT of the input rows
  Tensor coeffs;                     // wavelet: DWT of the input rows
};

/// Fully connected: z = x W + b, W is [in x out].
class DenseLayer {
 public:
  DenseLayer(FeatureShape in, std::size_t units, Activation act);

  Tensor forward_linear(const Tensor& x, LayerCache* cache) const;
  Tensor backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const;
  void initialize(SeededRng& rng, double stddev);

  std::vector<Tensor>& params() noexcept { return params_; }
  const std::vector<Tensor>& params() const noexcept { return params_; }
  FeatureShape output_shape() const noexcept { return {units_, 1}; }
  Activation activation() const noexcept { return act_; }

 private:
  std::size_t in_;
  std::size_t units_;
  Activation act_;
  std::vector<Tensor> params_;  // W [in x out], b [out]
};

/// Valid-padding 1-D cross-correlation.
/// out[t][f] = sum_{k,c} x[t*stride + k][c] K[f][k][c] + b[f].
class Conv1dLayer {
 public:
  Conv1dLayer(FeatureShape in, std::size_t filters, std::size_t kernel, std::size_t stride, Activation act);

  Tensor forward_linear(const Tensor& x, LayerCache* cache) const;
  Tensor backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const;
  void initialize(SeededRng& rng, double stddev);

  std::vector<Tensor>& params() noexcept { return params_; }
  const std::vector<Tensor>& params() const noexcept { return params_; }
  FeatureShape output_shape() const noexcept { return {out_len_, filters_}; }
  Activation activation() const noexcept { return act_; }

 private:
  FeatureShape in_;
  std::size_t filters_;
  std::size_t kernel_;
  std::size_t stride_;
  std::size_t out_len_;
  Activation act_;
  std::vector<Tensor> params_;  // K [filters x (kernel*channels)], b [filters]
};

/// Spectral layer: z = Re(IDFT(DFT(x) W^T)) with the DFT along the features.
///
/// The trainable matrix V is mapped to W = (V + R V) / 2, where
/// (R V)[k][j] = V[-k mod n][-j mod n]. Such W sends conjugate-symmetric
/// spectra to conjugate-symmetric spectra, so the inverse transform of a real
/// input is real; the imaginary residue is still checked (> 1e-6 throws
/// NumericIntegrityError).
class FourierLayer {
 public:
  FourierLayer(FeatureShape in, Activation act);

  Tensor forward_linear(const Tensor& x, LayerCache* cache) const;
  Tensor backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const;
  void initialize(SeededRng& rng, double stddev);

  std::vector<Tensor>& params() noexcept { return params_; }
  const std::vector<Tensor>& params() const noexcept { return params_; }
  FeatureShape output_shape() const noexcept { return {n_, 1}; }
  Activation activation() const noexcept { return act_; }

  /// The effective spectral weight matrix W for the current V.
  Tensor spectral_weights() const;

 private:
  std::size_t n_;
  Activation act_;
  std::shared_ptr<const transforms::DftMatrix> dft_;
  std::vector<Tensor> params_;  // V [n x n]
};

/// Wavelet-domain layer: z = IDWT(DWT(x) W^T) with one-level periodized D4,
/// coefficients packed as approx || detail.
class WaveletLayer {
 public:
  WaveletLayer(FeatureShape in, Activation act);

  Tensor forward_linear(const Tensor& x, LayerCache* cache) const;
  Tensor backward_linear(const LayerCache& cache, const Tensor& grad_pre, std::span<Tensor> grads) const;
  void initialize(SeededRng& rng, double stddev);

  std::vector<Tensor>& params() noexcept { return params_; }
  const std::vector<Tensor>& params() const noexcept { return params_; }
  FeatureShape output_shape() const noexcept { return {n_, 1}; }
  Activation activation() const noexcept { return act_; }

 private:
  std::size_t n_;
  Activation act_;
  std::vector<Tensor> params_;  // W [n x n]
};

/// Reinterprets [length x channels] features as one flat vector.
class FlattenLayer {
 public:
  explicit FlattenLayer(FeatureShape in) : in_(in) {}

  Tensor forward_linear(const Tensor& x, LayerCache*) const { return x; }
  Tensor backward_linear(const LayerCache&, const Tensor& grad_pre, std::span<Tensor>) const { return grad_pre; }
  void initialize(SeededRng&, double) {}

  std::vector<Tensor>& params() noexcept { return params_; }
  const std::vector<Tensor>& params() const noexcept { return params_; }
  FeatureShape output_shape() const noexcept { return {in_.width(), 1}; }
  Activation activation() const noexcept { return Activation::none; }

 private:
  FeatureShape in_;
  std::vector<Tensor> params_;
};

using Layer = std::variant<DenseLayer, Conv1dLayer, FourierLayer, WaveletLayer, FlattenLayer>;

/// Builds a layer for the given input geometry; throws DimensionError when the
/// spec does not fit it.
Layer make_layer(const LayerSpec& spec, FeatureShape in);

LayerKind kind_of(const Layer& layer) noexcept;

}  // namespace iplab::nn
