#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iplab/nn/layers.hpp"
#include "iplab/nn/loss.hpp"

namespace iplab::nn {

enum class OutputHead { binary_sigmoid, softmax10 };

std::string_view to_string(OutputHead h) noexcept;

/// Architecture description. The output head is appended after `layers` as a
/// dense layer (1 sigmoid unit or 10 softmax units).
///
/// `input_planes` > 1 declares the input vector as that many equal planes
/// stored one after another (split-complex data: re || im). A leading conv1d
/// layer reads the planes as channels; every other layer sees the flat vector.
struct ModelSpec {
  int input_dim = 0;
  int input_planes = 1;
  std::vector<LayerSpec> layers;
  OutputHead output = OutputHead::binary_sigmoid;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Throws DimensionError/ParameterError when layers do not compose.
void validate(const ModelSpec& spec);

enum class Preset { fc, cnn, fourier, wavelet };

std::string_view to_string(Preset p) noexcept;
/// Throws ParameterError for unknown names.
Preset preset_from_string(std::string_view name);

/// Canonical architectures:
///   fc      3 x dense(256, relu)
///   cnn     conv(256, k5, s1) -> conv(256, k3, s1) -> flatten -> 2 x dense(128)
///   fourier fourier -> fourier -> 2 x dense(128)
///   wavelet wavelet -> wavelet -> 2 x dense(128)
/// all relu, followed by the requested head.
ModelSpec make_preset(Preset preset, int input_dim, OutputHead head, int input_planes = 1);

/// Per-layer parameter gradients, parallel to Model::layers().
using Gradients = std::vector<std::vector<Tensor>>;

/// A network built from a ModelSpec. Copyable value type.
class Model {
 public:
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  std::span<const Layer> layers() const noexcept { return layers_; }
  std::span<Layer> layers() noexcept { return layers_; }

  /// Gaussian weights (biases zero) drawn in layer order.
  void initialize(SeededRng& rng, double stddev);

  std::size_t output_width() const noexcept;
  LossMode loss_mode() const noexcept;

  /// Head probabilities [batch x output_width].
  Tensor predict(const Tensor& x) const;

  /// Post-activation output of every non-flatten layer, head included.
  std::vector<Tensor> forward_trace(const Tensor& x) const;

  /// Indices into layers() of the non-flatten layers, in trace order.
  std::vector<std::size_t> traced_layers() const;

  /// Loss of the batch and its parameter gradients (written into `grads`).
  /// `targets` is [batch x output_width] (0/1 or one-hot).
  double loss_and_gradients(const Tensor& x, const Tensor& targets, Gradients& grads) const;

  /// Zero-filled gradient storage shaped like the parameters.
  Gradients zero_gradients() const;

  void apply_sgd(const Gradients& grads, double lr);

  std::size_t parameter_count() const noexcept;

 private:
  Tensor adapt_input(const Tensor& x) const;

  ModelSpec spec_;
  std::vector<Layer> layers_;
};

/// One-hot (softmax head) or single-column (sigmoid head) targets.
Tensor make_targets(std::span<const int> labels, OutputHead head);

}  // namespace iplab::nn
