#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "physinet/errors.hpp"

namespace physinet {

struct AdamHyperparameters {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  friend bool operator==(const AdamHyperparameters&, const AdamHyperparameters&) = default;
};

// Moment accumulators for one flat parameter vector.
struct AdamState {
  AdamState() = default;
  explicit AdamState(std::size_t parameter_count, AdamHyperparameters h = {})
      : hyper(h), first_moment(parameter_count, 0.0), second_moment(parameter_count, 0.0) {}

  AdamHyperparameters hyper;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t timestep = 0;

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// Bias-corrected Adam; advances the timestep by one.
inline void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size() ||
      params.size() != state.second_moment.size()) {
    throw ShapeError("adam_step: parameter, gradient and moment sizes differ");
  }
  const auto& h = state.hyper;
  ++state.timestep;
  const double t = static_cast<double>(state.timestep);
  const double correction1 = 1.0 - std::pow(h.beta1, t);
  const double correction2 = 1.0 - std::pow(h.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = h.beta1 * m + (1.0 - h.beta1) * grads[i];
    v = h.beta2 * v + (1.0 - h.beta2) * grads[i] * grads[i];
    params[i] -= h.learning_rate * (m / correction1) / (std::sqrt(v / correction2) + h.epsilon);
  }
}

}  // namespace physinet
