#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "physinet/network.hpp"
#include "physinet/rng.hpp"

namespace physinet {

/// Central-difference gradient of `loss` with respect to every parameter of `net`.
template <class Loss>
  requires std::invocable<const Loss&, const Network&>
Gradients finite_diff_grad(const Network& net, const Loss& loss, double eps = 1e-6) {
  if (!(eps > 0.0)) throw UsageError("finite_diff_grad: eps must be positive");
  auto grads = Gradients::zeros_like(net);
  Network probe = net;
  auto theta = probe.values();
  auto out = grads.values();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double saved = theta[i];
    theta[i] = saved + eps;
    const double up = loss(std::as_const(probe));
    theta[i] = saved - eps;
    const double down = loss(std::as_const(probe));
    theta[i] = saved;
    out[i] = (up - down) / (2.0 * eps);
  }
  return grads;
}

inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / (std::abs(analytic) + std::abs(numeric) + 1e-8);
}

// Location of the worst disagreement between two gradient sets.
struct GradientMismatch {
  double relative_error = 0.0;
  std::size_t layer = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  bool is_bias = false;
};

inline GradientMismatch worst_mismatch(const Gradients& analytic, const Gradients& numeric) {
  if (!analytic.same_shape(numeric)) throw ShapeError("worst_mismatch: gradient shapes differ");
  GradientMismatch worst;
  for (std::size_t j = 0; j < analytic.layer_count(); ++j) {
    const auto a = analytic.layer(j);
    const auto n = numeric.layer(j);
    for (std::size_t r = 0; r < a.rows; ++r) {
      for (std::size_t c = 0; c < a.cols; ++c) {
        const double e = relative_error(a.weight(r, c), n.weight(r, c));
        if (e > worst.relative_error) worst = {e, j, r, c, false};
      }
      const double e = relative_error(a.biases[r], n.biases[r]);
      if (e > worst.relative_error) worst = {e, j, r, 0, true};
    }
  }
  return worst;
}

struct GradientCheckReport {
  GradientMismatch worst;
  std::vector<std::size_t> worst_architecture;
  std::size_t trials = 0;
  double tolerance = 1e-5;

  bool passed() const { return worst.relative_error < tolerance; }
};

// Compares backward() with central differences on seeded random networks,
// inputs and targets under the squared-error loss, for each architecture.
// `corrupt_derivative` scales the analytic gradient of the first parameter
// so the check can be exercised as a negative control.
inline GradientCheckReport run_gradient_check(std::uint64_t seed, std::size_t trials = 50,
                                              bool corrupt_derivative = false,
                                              std::vector<std::vector<std::size_t>> architectures = {
                                                  {1, 10, 10, 1}, {1, 4, 1}}) {
  GradientCheckReport report;
  report.trials = trials;
  for (std::size_t a = 0; a < architectures.size(); ++a) {
    Rng rng(Rng::derive(seed, a));
    for (std::size_t trial = 0; trial < trials; ++trial) {
      Network net = init_network({architectures[a], rng.next()});
      for (std::size_t j = 0; j < net.layer_count(); ++j) {
        for (double& b : net.layer(j).biases) b = rng.uniform(-0.5, 0.5);
      }
      std::vector<double> x(net.input_size());
      for (double& v : x) v = rng.uniform(-2.0, 2.0);
      const double target = rng.uniform(-1.0, 1.0);

      const auto loss = [&](const Network& n) {
        const double e = forward(n, x).output - target;
        return e * e;
      };
      const auto pass = forward(net, x);
      auto analytic = backward(net, x, pass, 2.0 * (pass.output - target));
      if (corrupt_derivative) analytic.values()[0] = analytic.values()[0] * 1.01 + 1e-3;
      const auto mismatch = worst_mismatch(analytic, finite_diff_grad(net, loss));
      if (mismatch.relative_error > report.worst.relative_error || report.worst_architecture.empty()) {
        report.worst = mismatch;
        report.worst_architecture = architectures[a];
      }
    }
  }
  return report;
}

}  // namespace physinet
