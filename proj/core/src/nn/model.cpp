#include "iplab/nn/model.hpp"

#include <algorithm>
#include <string>

#include "iplab/error.hpp"

namespace iplab::nn {

namespace {

struct HeadShape {
  std::size_t units;
  Activation activation;
};

HeadShape head_shape(OutputHead head) {
  return head == OutputHead::binary_sigmoid ? HeadShape{1, Activation::sigmoid} : HeadShape{10, Activation::softmax};
}

FeatureShape input_shape(const ModelSpec& spec) {
  const auto dim = static_cast<std::size_t>(spec.input_dim);
  const auto planes = static_cast<std::size_t>(spec.input_planes);
  if (planes > 1 && !spec.layers.empty() && spec.layers.front().kind == LayerKind::conv1d) {
    return {dim / planes, planes};
  }
  return {dim, 1};
}

std::vector<Layer> build_layers(const ModelSpec& spec) {
  if (spec.input_dim < 1) throw ParameterError("model input_dim must be >= 1");
  if (spec.input_planes < 1 || spec.input_dim % spec.input_planes != 0) {
    throw DimensionError("input_dim " + std::to_string(spec.input_dim) + " is not divisible into " +
                         std::to_string(spec.input_planes) + " planes");
  }
  std::vector<Layer> layers;
  FeatureShape shape = input_shape(spec);
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    try {
      layers.push_back(make_layer(spec.layers[i], shape));
    } catch (const Error& e) {
      throw DimensionError("layer " + std::to_string(i) + " (" + std::string(to_string(spec.layers[i].kind)) +
                           "): " + e.what());
    }
    shape = std::visit([](const auto& l) { return l.output_shape(); }, layers.back());
  }
  const auto head = head_shape(spec.output);
  if (shape.channels != 1) throw DimensionError("output head needs a flatten after the last conv1d layer");
  layers.emplace_back(DenseLayer(shape, head.units, head.activation));
  return layers;
}

Activation activation_of(const Layer& layer) {
  return std::visit([](const auto& l) { return l.activation(); }, layer);
}

}  // namespace

std::string_view to_string(OutputHead h) noexcept {
  return h == OutputHead::binary_sigmoid ? "binary_sigmoid" : "softmax10";
}

void validate(const ModelSpec& spec) { (void)build_layers(spec); }

std::string_view to_string(Preset p) noexcept {
  switch (p) {
    case Preset::fc: return "fc";
    case Preset::cnn: return "cnn";
    case Preset::fourier: return "fourier";
    case Preset::wavelet: return "wavelet";
  }
  return "fc";
}

Preset preset_from_string(std::string_view name) {
  for (auto p : {Preset::fc, Preset::cnn, Preset::fourier, Preset::wavelet}) {
    if (to_string(p) == name) return p;
  }
  throw ParameterError("unknown preset '" + std::string(name) + "'");
}

ModelSpec make_preset(Preset preset, int input_dim, OutputHead head, int input_planes) {
  ModelSpec spec;
  spec.input_dim = input_dim;
  spec.input_planes = input_planes;
  spec.output = head;
  switch (preset) {
    case Preset::fc:
      spec.layers = {LayerSpec::dense(256), LayerSpec::dense(256), LayerSpec::dense(256)};
      break;
    case Preset::cnn:
      spec.layers = {LayerSpec::conv1d(256, 5, 1), LayerSpec::conv1d(256, 3, 1), LayerSpec::flatten(),
                     LayerSpec::dense(128), LayerSpec::dense(128)};
      break;
    case Preset::fourier:
      spec.layers = {LayerSpec::fourier(), LayerSpec::fourier(), LayerSpec::dense(128), LayerSpec::dense(128)};
      break;
    case Preset::wavelet:
      spec.layers = {LayerSpec::wavelet(), LayerSpec::wavelet(), LayerSpec::dense(128), LayerSpec::dense(128)};
      break;
  }
  validate(spec);
  return spec;
}

Model::Model(ModelSpec spec) : spec_(std::move(spec)), layers_(build_layers(spec_)) {}

void Model::initialize(SeededRng& rng, double stddev) {
  for (auto& layer : layers_) std::visit([&](auto& l) { l.initialize(rng, stddev); }, layer);
}

std::size_t Model::output_width() const noexcept { return head_shape(spec_.output).units; }

LossMode Model::loss_mode() const noexcept {
  return spec_.output == OutputHead::binary_sigmoid ? LossMode::binary : LossMode::categorical;
}

Tensor Model::adapt_input(const Tensor& x) const {
  if (x.rank() != 2 || x.cols() != static_cast<std::size_t>(spec_.input_dim)) {
    throw DimensionError("model expects [batch x " + std::to_string(spec_.input_dim) + "], got " +
                         numerics::shape_string(x.shape()));
  }
  const auto shape = input_shape(spec_);
  if (shape.channels == 1) return x;
  // planar (plane-major) -> position-major with planes as channels
  Tensor out(x.shape());
  for (std::size_t b = 0; b < x.rows(); ++b) {
    const double* src = x.data() + b * x.cols();
    double* dst = out.data() + b * x.cols();
    for (std::size_t c = 0; c < shape.channels; ++c) {
      for (std::size_t t = 0; t < shape.length; ++t) dst[t * shape.channels + c] = src[c * shape.length + t];
    }
  }
  return out;
}

Tensor Model::predict(const Tensor& x) const {
  Tensor a = adapt_input(x);
  for (const auto& layer : layers_) {
    Tensor z = std::visit([&](const auto& l) { return l.forward_linear(a, nullptr); }, layer);
    a = activation_apply(activation_of(layer), z);
  }
  return a;
}

std::vector<Tensor> Model::forward_trace(const Tensor& x) const {
  std::vector<Tensor> trace;
  Tensor a = adapt_input(x);
  for (const auto& layer : layers_) {
    Tensor z = std::visit([&](const auto& l) { return l.forward_linear(a, nullptr); }, layer);
    a = activation_apply(activation_of(layer), z);
    if (kind_of(layer) != LayerKind::flatten) trace.push_back(a);
  }
  return trace;
}

std::vector<std::size_t> Model::traced_layers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (kind_of(layers_[i]) != LayerKind::flatten) out.push_back(i);
  }
  return out;
}

Gradients Model::zero_gradients() const {
  Gradients g;
  g.reserve(layers_.size());
  for (const auto& layer : layers_) {
    std::vector<Tensor> per;
    for (const auto& p : std::visit([](const auto& l) -> const std::vector<Tensor>& { return l.params(); }, layer)) {
      per.emplace_back(p.shape());
    }
    g.push_back(std::move(per));
  }
  return g;
}

double Model::loss_and_gradients(const Tensor& x, const Tensor& targets, Gradients& grads) const {
  if (grads.size() != layers_.size()) grads = zero_gradients();
  for (auto& per : grads) {
    for (auto& t : per) std::fill(t.values().begin(), t.values().end(), 0.0);
  }
  const std::size_t batch = x.rows();
  if (targets.rank() != 2 || targets.rows() != batch || targets.cols() != output_width()) {
    throw DimensionError("targets " + numerics::shape_string(targets.shape()) + " do not match batch of " +
                         std::to_string(batch) + " x " + std::to_string(output_width()));
  }

  std::vector<LayerCache> caches(layers_.size());
  Tensor a = adapt_input(x);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Tensor z = std::visit([&](const auto& l) { return l.forward_linear(a, &caches[i]); }, layers_[i]);
    a = activation_apply(activation_of(layers_[i]), z);
    caches[i].pre = std::move(z);
    caches[i].post = a;
  }
  const double loss = cross_entropy(targets, a, loss_mode());

  // Sigmoid + binary CE and softmax + categorical CE share dL/dz = (p - y) / B.
  Tensor grad(a.shape());
  const double inv_batch = 1.0 / static_cast<double>(batch);
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = (a[k] - targets[k]) * inv_batch;

  for (std::size_t i = layers_.size(); i-- > 0;) {
    Tensor gx = std::visit([&](const auto& l) { return l.backward_linear(caches[i], grad, grads[i]); }, layers_[i]);
    if (i == 0) break;
    const auto& prev = caches[i - 1];
    grad = activation_backward(activation_of(layers_[i - 1]), prev.pre, prev.post, gx);
  }
  return loss;
}

void Model::apply_sgd(const Gradients& grads, double lr) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto& params = std::visit([](auto& l) -> std::vector<Tensor>& { return l.params(); }, layers_[i]);
    for (std::size_t p = 0; p < params.size(); ++p) sgd_step_inplace(params[p], grads[i][p], lr);
  }
}

std::size_t Model::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    for (const auto& p : std::visit([](const auto& l) -> const std::vector<Tensor>& { return l.params(); }, layer)) {
      n += p.size();
    }
  }
  return n;
}

Tensor make_targets(std::span<const int> labels, OutputHead head) {
  if (head == OutputHead::binary_sigmoid) {
    Tensor t({labels.size(), 1});
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0 && labels[i] != 1) throw ValidationError("binary head needs 0/1 labels");
      t[i] = labels[i];
    }
    return t;
  }
  Tensor t({labels.size(), 10});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] > 9) throw ValidationError("softmax10 head needs labels in 0..9");
    t.at(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return t;
}

}  // namespace iplab::nn
