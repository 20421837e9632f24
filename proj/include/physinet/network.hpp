#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "physinet/errors.hpp"
#include "physinet/rng.hpp"

namespace physinet {

enum class ActivationKind { HyperbolicTangent, Identity };

inline double activate(ActivationKind kind, double z) noexcept {
  return kind == ActivationKind::HyperbolicTangent ? std::tanh(z) : z;
}

// Derivative expressed through the activation output a = activate(z).
inline double activation_slope(ActivationKind kind, double a) noexcept {
  return kind == ActivationKind::HyperbolicTangent ? 1.0 - a * a : 1.0;
}

struct NetworkConfig {
  std::vector<std::size_t> layer_sizes;  // [n_in, h_1, ..., h_k, n_out]
  std::uint64_t seed = 0;
};

inline void validate_layer_sizes(std::span<const std::size_t> sizes) {
  if (sizes.size() < 3) {
    throw ConfigError("layer_sizes needs an input, at least one hidden layer and an output");
  }
  if (std::ranges::find(sizes, std::size_t{0}) != sizes.end()) {
    throw ConfigError("layer_sizes entries must be positive");
  }
}

inline void validate(const NetworkConfig& config) {
  validate_layer_sizes(config.layer_sizes);
  if (config.layer_sizes.back() != 1) {
    throw ConfigError("only single-output networks are supported");
  }
}

// One dense layer inside a ParameterBlock. Weights are row-major,
// rows = neurons of this layer, cols = inputs from the previous layer.
template <bool Const>
struct BasicLayerView {
  using element_type = std::conditional_t<Const, const double, double>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<element_type> weights;
  std::span<element_type> biases;

  element_type& weight(std::size_t row, std::size_t col) const { return weights[row * cols + col]; }
};

using LayerView = BasicLayerView<false>;
using ConstLayerView = BasicLayerView<true>;

// Flat storage of all weights and biases of a layered dense model. Each layer
// occupies [weights (rows*cols) | biases (rows)] in order, so optimizers and
// finite-difference checks can walk a single span.
class ParameterBlock {
 public:
  ParameterBlock() = default;

  explicit ParameterBlock(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
    validate_layer_sizes(sizes_);
    std::size_t total = 0;
    for (std::size_t j = 0; j + 1 < sizes_.size(); ++j) {
      offsets_.push_back(total);
      total += sizes_[j + 1] * sizes_[j] + sizes_[j + 1];
    }
    values_.assign(total, 0.0);
  }

  std::size_t layer_count() const noexcept { return sizes_.empty() ? 0 : sizes_.size() - 1; }
  std::span<const std::size_t> layer_sizes() const noexcept { return sizes_; }
  std::size_t input_size() const noexcept { return sizes_.empty() ? 0 : sizes_.front(); }
  std::size_t output_size() const noexcept { return sizes_.empty() ? 0 : sizes_.back(); }

  LayerView layer(std::size_t j) {
    const auto [rows, cols, offset] = geometry(j);
    std::span<double> all(values_);
    return {rows, cols, all.subspan(offset, rows * cols), all.subspan(offset + rows * cols, rows)};
  }

  ConstLayerView layer(std::size_t j) const {
    const auto [rows, cols, offset] = geometry(j);
    std::span<const double> all(values_);
    return {rows, cols, all.subspan(offset, rows * cols), all.subspan(offset + rows * cols, rows)};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool same_shape(const ParameterBlock& other) const noexcept { return sizes_ == other.sizes_; }

  bool all_finite() const noexcept {
    return std::ranges::all_of(values_, [](double v) { return std::isfinite(v); });
  }

  void fill(double value) noexcept { std::ranges::fill(values_, value); }

  friend bool operator==(const ParameterBlock&, const ParameterBlock&) = default;

 private:
  struct Geometry {
    std::size_t rows, cols, offset;
  };

  Geometry geometry(std::size_t j) const {
    if (j >= layer_count()) throw ShapeError("layer index out of range");
    return {sizes_[j + 1], sizes_[j], offsets_[j]};
  }

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

/// Dense feedforward network: tanh hidden layers, identity output layer.
class Network : public ParameterBlock {
 public:
  using ParameterBlock::ParameterBlock;

  ActivationKind activation(std::size_t layer) const noexcept {
    return layer + 1 == layer_count() ? ActivationKind::Identity : ActivationKind::HyperbolicTangent;
  }

  friend bool operator==(const Network&, const Network&) = default;
};

/// Derivatives of a scalar loss with respect to every Network parameter.
class Gradients : public ParameterBlock {
 public:
  using ParameterBlock::ParameterBlock;

  static Gradients zeros_like(const ParameterBlock& net) {
    return Gradients(std::vector<std::size_t>(net.layer_sizes().begin(), net.layer_sizes().end()));
  }

  Gradients& operator+=(const Gradients& other) {
    if (!same_shape(other)) throw ShapeError("gradient shapes differ");
    auto dst = values();
    auto src = other.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    return *this;
  }

  friend bool operator==(const Gradients&, const Gradients&) = default;
};

/// Glorot-uniform weights, zero biases; fully determined by config.seed.
inline Network init_network(const NetworkConfig& config) {
  validate(config);
  Network net(config.layer_sizes);
  Rng rng(config.seed);
  for (std::size_t j = 0; j < net.layer_count(); ++j) {
    auto layer = net.layer(j);
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.rows + layer.cols));
    for (double& w : layer.weights) w = rng.uniform(-bound, bound);
  }
  return net;
}

// Per-layer outputs of one forward pass; activations[j] is the output of layer j.
struct ForwardPass {
  double output = 0.0;
  std::vector<std::vector<double>> activations;
};

inline ForwardPass forward(const Network& net, std::span<const double> features) {
  if (features.size() != net.input_size()) {
    throw ShapeError("expected " + std::to_string(net.input_size()) + " features, got " +
                     std::to_string(features.size()));
  }
  ForwardPass pass;
  pass.activations.reserve(net.layer_count());
  std::span<const double> input = features;
  for (std::size_t j = 0; j < net.layer_count(); ++j) {
    const auto layer = net.layer(j);
    const auto kind = net.activation(j);
    std::vector<double> out(layer.rows);
    for (std::size_t r = 0; r < layer.rows; ++r) {
      double z = layer.biases[r];
      for (std::size_t c = 0; c < layer.cols; ++c) z += input[c] * layer.weight(r, c);
      out[r] = activate(kind, z);
    }
    pass.activations.push_back(std::move(out));
    input = pass.activations.back();
  }
  // Output neurons are summed into the scalar network output.
  for (double a : pass.activations.back()) pass.output += a;
  return pass;
}

/// Adds upstream * d(output)/d(theta) into `grads`. `upstream` is dLoss/d(output).
inline void accumulate_backward(const Network& net, std::span<const double> features,
                                const ForwardPass& pass, double upstream, Gradients& grads) {
  if (!grads.same_shape(net) || pass.activations.size() != net.layer_count() ||
      features.size() != net.input_size()) {
    throw ShapeError("backward: network, activations and gradients disagree in shape");
  }
  const std::size_t last = net.layer_count() - 1;
  std::vector<double> delta(net.output_size());
  for (std::size_t r = 0; r < delta.size(); ++r) {
    delta[r] = upstream * activation_slope(net.activation(last), pass.activations[last][r]);
  }
  for (std::size_t j = net.layer_count(); j-- > 0;) {
    const auto layer = net.layer(j);
    auto grad = grads.layer(j);
    const std::span<const double> input = j == 0 ? features : std::span<const double>(pass.activations[j - 1]);
    for (std::size_t r = 0; r < layer.rows; ++r) {
      for (std::size_t c = 0; c < layer.cols; ++c) grad.weight(r, c) += delta[r] * input[c];
      grad.biases[r] += delta[r];
    }
    if (j == 0) break;
    std::vector<double> previous(layer.cols, 0.0);
    const auto kind = net.activation(j - 1);
    for (std::size_t c = 0; c < layer.cols; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < layer.rows; ++r) sum += layer.weight(r, c) * delta[r];
      previous[c] = sum * activation_slope(kind, input[c]);
    }
    delta = std::move(previous);
  }
}

inline Gradients backward(const Network& net, std::span<const double> features, const ForwardPass& pass,
                          double upstream) {
  auto grads = Gradients::zeros_like(net);
  accumulate_backward(net, features, pass, upstream, grads);
  return grads;
}

}  // namespace physinet
