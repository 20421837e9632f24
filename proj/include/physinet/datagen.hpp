#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "physinet/errors.hpp"
#include "physinet/physics.hpp"
#include "physinet/rng.hpp"

namespace physinet {

/// Paired inputs (row-major, feature_count per sample) and measured targets.
struct DataBatch {
  std::size_t feature_count = 1;
  std::vector<double> inputs;
  std::vector<double> targets;

  std::size_t size() const noexcept { return targets.size(); }
  bool empty() const noexcept { return targets.empty(); }

  std::span<const double> input(std::size_t i) const {
    return std::span<const double>(inputs).subspan(i * feature_count, feature_count);
  }

  void push_back(std::span<const double> x, double y) {
    if (x.size() != feature_count) throw ShapeError("DataBatch: feature count mismatch");
    inputs.insert(inputs.end(), x.begin(), x.end());
    targets.push_back(y);
  }

  void validate() const {
    if (empty()) throw UsageError("DataBatch is empty");
    if (inputs.size() != targets.size() * feature_count) throw ShapeError("DataBatch: inputs/targets length");
    for (double v : inputs) {
      if (!std::isfinite(v)) throw UsageError("DataBatch: non-finite input");
    }
    for (double v : targets) {
      if (!std::isfinite(v)) throw UsageError("DataBatch: non-finite target");
    }
  }

  friend bool operator==(const DataBatch&, const DataBatch&) = default;
};

// Quadratic process y = a x^2 + b + noise, measured against the linear law.
struct Case1Config {
  double a = 0.1;
  double b = 15.0;
  double noise_std = 0.5;
  double x_low = 0.0;
  double x_high = 10.0;

  void validate() const {
    if (!(x_low < x_high)) throw ConfigError("Case1Config: x_low must be below x_high");
    if (!(noise_std >= 0.0)) throw ConfigError("Case1Config: noise_std must be non-negative");
  }
};

// Second-order plant measured through its FRF magnitude.
struct Case2Config {
  double a0_true = 4.1;
  double a0_model = 4.4;
  double omega_low = 0.0;
  double omega_high = 10.0;
  double noise_std = 0.0;

  void validate() const {
    if (!(omega_low < omega_high)) throw ConfigError("Case2Config: omega_low must be below omega_high");
    if (!(a0_true > 0.0) || !(a0_model > 0.0)) throw ConfigError("Case2Config: a0 values must be positive");
    if (!(noise_std >= 0.0)) throw ConfigError("Case2Config: noise_std must be non-negative");
  }
};

inline double case1_response(const Case1Config& cfg, double x) noexcept { return cfg.a * x * x + cfg.b; }

inline double case2_response(const Case2Config& cfg, double omega) {
  return frf_magnitude(SecondOrderFrf(cfg.a0_true), omega);
}

// Per point: x = rng.uniform(x_low, x_high), then one rng.normal() for the noise.
inline DataBatch sample_case1(const Case1Config& cfg, std::size_t n, Rng& rng) {
  cfg.validate();
  if (n == 0) throw UsageError("sample_case1: n must be positive");
  DataBatch batch;
  batch.inputs.reserve(n);
  batch.targets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(cfg.x_low, cfg.x_high);
    const double noise = cfg.noise_std * rng.normal();
    batch.inputs.push_back(x);
    batch.targets.push_back(case1_response(cfg, x) + noise);
  }
  return batch;
}

// Same draw order as sample_case1; the noise variate is drawn only when noise_std > 0.
inline DataBatch sample_case2(const Case2Config& cfg, std::size_t n, Rng& rng) {
  cfg.validate();
  if (n == 0) throw UsageError("sample_case2: n must be positive");
  const SecondOrderFrf plant(cfg.a0_true);
  DataBatch batch;
  batch.inputs.reserve(n);
  batch.targets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double omega = rng.uniform(cfg.omega_low, cfg.omega_high);
    double y = frf_magnitude(plant, omega);
    if (cfg.noise_std > 0.0) y += cfg.noise_std * rng.normal();
    batch.inputs.push_back(omega);
    batch.targets.push_back(y);
  }
  return batch;
}

}  // namespace physinet
