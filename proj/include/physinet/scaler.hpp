#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "physinet/errors.hpp"

namespace physinet {

// Per-feature affine map (x - mean) / scale applied to network inputs only.
// Default-constructed it is the identity; fit() freezes statistics from one
// batch of row-major samples.
struct FeatureScaler {
  std::vector<double> mean;
  std::vector<double> scale;

  bool fitted() const noexcept { return !mean.empty(); }

  static FeatureScaler fit(std::span<const double> rows, std::size_t feature_count) {
    if (feature_count == 0 || rows.empty() || rows.size() % feature_count != 0) {
      throw UsageError("FeatureScaler::fit: need a non-empty row-major sample");
    }
    const std::size_t n = rows.size() / feature_count;
    FeatureScaler s{std::vector<double>(feature_count, 0.0), std::vector<double>(feature_count, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < feature_count; ++f) s.mean[f] += rows[i * feature_count + f];
    }
    for (double& m : s.mean) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < feature_count; ++f) {
        const double d = rows[i * feature_count + f] - s.mean[f];
        s.scale[f] += d * d;
      }
    }
    for (double& v : s.scale) {
      v = std::sqrt(v / static_cast<double>(n));
      if (!(v > 0.0)) v = 1.0;  // constant feature
    }
    return s;
  }

  std::vector<double> apply(std::span<const double> features) const {
    std::vector<double> out(features.begin(), features.end());
    if (!fitted()) return out;
    if (features.size() != mean.size()) throw ShapeError("FeatureScaler: feature count mismatch");
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = (out[f] - mean[f]) / scale[f];
    return out;
  }

  friend bool operator==(const FeatureScaler&, const FeatureScaler&) = default;
};

}  // namespace physinet
