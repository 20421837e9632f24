#pragma once

#include <span>
#include <utility>

#include "physinet/adam.hpp"
#include "physinet/network.hpp"
#include "physinet/scaler.hpp"

namespace physinet {

// Network-only regressor: the black-box baseline.
struct NeuralModel {
  using gradient_type = Gradients;
  using optimizer_type = AdamState;

  Network net;
  FeatureScaler scaler;

  double output(std::span<const double> features) const {
    return forward(net, scaler.apply(features)).output;
  }

  gradient_type zero_gradient() const { return Gradients::zeros_like(net); }

  // Adds the gradient of weight * (output - target)^2; returns the output.
  double accumulate_gradient(std::span<const double> features, double target, double weight,
                             gradient_type& grads) const {
    const auto x = scaler.apply(features);
    const auto pass = forward(net, x);
    accumulate_backward(net, x, pass, 2.0 * weight * (pass.output - target), grads);
    return pass.output;
  }

  optimizer_type make_optimizer(const AdamHyperparameters& h) const { return AdamState(net.size(), h); }

  void apply_gradient(const gradient_type& grads, optimizer_type& opt) {
    adam_step(net.values(), grads.values(), opt);
  }

  friend bool operator==(const NeuralModel&, const NeuralModel&) = default;
};

}  // namespace physinet
