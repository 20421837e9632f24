#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "physinet/adam.hpp"
#include "physinet/network.hpp"
#include "physinet/physics.hpp"
#include "physinet/scaler.hpp"

namespace physinet {

/// Scalar mixing weights of the physics and network branches.
struct CombinerWeights {
  double w_physi = 0.99;
  double w_nn = 0.01;

  friend bool operator==(const CombinerWeights&, const CombinerWeights&) = default;
};

/// Physics-dominated start: y_hat is 0.99 * q_physi while the network is untrained.
inline constexpr CombinerWeights kInitialCombinerWeights{0.99, 0.01};

struct Prediction {
  double y_hat = 0.0;
  double q_physi = 0.0;
  double q_nn = 0.0;
};

struct CombinerGradients {
  double d_w_physi = 0.0;
  double d_w_nn = 0.0;
  double d_q_nn = 0.0;  // fed into the network backward pass
};

/// Chain rule through y_hat = q_physi * w_physi + q_nn * w_nn. Nothing flows into the physics branch.
constexpr CombinerGradients combiner_gradients(double q_physi, double q_nn, const CombinerWeights& weights,
                                               double upstream) noexcept {
  return {upstream * q_physi, upstream * q_nn, upstream * weights.w_nn};
}

/// w_physi / w_nn, or nullopt when w_nn is zero.
inline std::optional<double> weight_ratio(const CombinerWeights& weights) noexcept {
  if (weights.w_nn == 0.0) return std::nullopt;
  return weights.w_physi / weights.w_nn;
}

struct PhysiNetGradients {
  Gradients network;
  double w_physi = 0.0;
  double w_nn = 0.0;
};

struct PhysiNetOptimizer {
  AdamState network;
  AdamState combiner;
  bool freeze_combiner = false;
};

// Fixed physics predictor plus trainable network, mixed by two learnable scalars.
// Only `net` and `weights` change during training.
struct PhysiNetModel {
  using gradient_type = PhysiNetGradients;
  using optimizer_type = PhysiNetOptimizer;

  PhysicsModel physics;
  Network net;
  FeatureScaler scaler;
  CombinerWeights weights = kInitialCombinerWeights;

  Prediction predict(std::span<const double> features) const {
    Prediction p;
    p.q_physi = physics_predict(physics, features);
    p.q_nn = forward(net, scaler.apply(features)).output;
    p.y_hat = p.q_physi * weights.w_physi + p.q_nn * weights.w_nn;
    return p;
  }

  double output(std::span<const double> features) const { return predict(features).y_hat; }

  gradient_type zero_gradient() const { return {Gradients::zeros_like(net), 0.0, 0.0}; }

  // Adds the gradient of weight * (y_hat - target)^2; returns y_hat.
  double accumulate_gradient(std::span<const double> features, double target, double weight,
                             gradient_type& grads) const {
    const double q_physi = physics_predict(physics, features);
    const auto x = scaler.apply(features);
    const auto pass = forward(net, x);
    const double y_hat = q_physi * weights.w_physi + pass.output * weights.w_nn;
    const auto g = combiner_gradients(q_physi, pass.output, weights, 2.0 * weight * (y_hat - target));
    grads.w_physi += g.d_w_physi;
    grads.w_nn += g.d_w_nn;
    accumulate_backward(net, x, pass, g.d_q_nn, grads.network);
    return y_hat;
  }

  optimizer_type make_optimizer(const AdamHyperparameters& h) const {
    return {AdamState(net.size(), h), AdamState(2, h), false};
  }

  void apply_gradient(const gradient_type& grads, optimizer_type& opt) {
    adam_step(net.values(), grads.network.values(), opt.network);
    if (opt.freeze_combiner) return;
    std::array<double, 2> w{weights.w_physi, weights.w_nn};
    const std::array<double, 2> g{grads.w_physi, grads.w_nn};
    adam_step(w, g, opt.combiner);
    weights = {w[0], w[1]};
  }

  friend bool operator==(const PhysiNetModel&, const PhysiNetModel&) = default;
};

}  // namespace physinet
