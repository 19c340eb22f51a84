#include "iplab/nn/activation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iplab/error.hpp"

namespace iplab::nn {

namespace {

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::size_t row_width(const Tensor& t) { return t.rank() >= 2 ? t.shape().back() : t.size(); }

}  // namespace

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::heaviside: return "heaviside";
    case Activation::softmax: return "softmax";
    case Activation::none: return "none";
  }
  return "none";
}

Activation activation_from_string(std::string_view name) {
  for (auto a : {Activation::relu, Activation::sigmoid, Activation::heaviside, Activation::softmax, Activation::none}) {
    if (to_string(a) == name) return a;
  }
  throw ParameterError("unknown activation '" + std::string(name) + "'");
}

Tensor activation_apply(Activation kind, const Tensor& z) {
  Tensor a = z;
  auto v = a.values();
  switch (kind) {
    case Activation::relu:
      for (double& x : v) x = x > 0.0 ? x : 0.0;
      break;
    case Activation::sigmoid:
      for (double& x : v) x = sigmoid(x);
      break;
    case Activation::heaviside:
      for (double& x : v) x = x < 0.0 ? 0.0 : 1.0;
      break;
    case Activation::softmax: {
      const std::size_t w = row_width(z);
      if (w == 0) break;
      for (std::size_t start = 0; start < v.size(); start += w) {
        auto row = v.subspan(start, w);
        const double peak = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double& x : row) {
          x = std::exp(x - peak);
          sum += x;
        }
        for (double& x : row) x /= sum;
      }
      break;
    }
    case Activation::none:
      break;
  }
  return a;
}

Tensor activation_backward(Activation kind, const Tensor& z, const Tensor& a, const Tensor& grad_a) {
  Tensor g = grad_a;
  auto gv = g.values();
  const auto zv = z.values();
  const auto av = a.values();
  switch (kind) {
    case Activation::relu:
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] = zv[i] > 0.0 ? gv[i] : 0.0;
      break;
    case Activation::sigmoid:
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] *= av[i] * (1.0 - av[i]);
      break;
    case Activation::heaviside:
      for (double& x : gv) x = 0.0;
      break;
    case Activation::softmax: {
      const std::size_t w = row_width(z);
      for (std::size_t start = 0; start < gv.size(); start += w) {
        double dot = 0.0;
        for (std::size_t i = start; i < start + w; ++i) dot += gv[i] * av[i];
        for (std::size_t i = start; i < start + w; ++i) gv[i] = av[i] * (gv[i] - dot);
      }
      break;
    }
    case Activation::none:
      break;
  }
  return g;
}

}  // namespace iplab::nn
