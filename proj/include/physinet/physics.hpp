#pragma once

#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <variant>

#include "physinet/errors.hpp"

namespace physinet {

// Fixed analytic predictors. Parameters are set at construction and never
// exposed for mutation; training only ever reads them.

/// q = slope * x + offset.
class LinearPhysics {
 public:
  constexpr LinearPhysics() noexcept = default;
  constexpr LinearPhysics(double slope, double offset) noexcept : slope_(slope), offset_(offset) {}

  constexpr double slope() const noexcept { return slope_; }
  constexpr double offset() const noexcept { return offset_; }

  friend constexpr bool operator==(const LinearPhysics&, const LinearPhysics&) = default;

 private:
  double slope_ = 0.0;
  double offset_ = 0.0;
};

constexpr double linear_predict(const LinearPhysics& m, double x) noexcept {
  return m.slope() * x + m.offset();
}

/// Magnitude of the plant 1 / (s^2 + s + a0) on s = j*omega.
class SecondOrderFrf {
 public:
  explicit SecondOrderFrf(double a0) : a0_(a0) {
    if (!(a0 > 0.0) || !std::isfinite(a0)) throw ConfigError("SecondOrderFrf: a0 must be positive");
  }

  double a0() const noexcept { return a0_; }

  friend bool operator==(const SecondOrderFrf&, const SecondOrderFrf&) = default;

 private:
  double a0_;
};

inline double frf_magnitude(const SecondOrderFrf& m, double omega) {
  const double real = m.a0() - omega * omega;
  return 1.0 / std::sqrt(real * real + omega * omega);
}

using PhysicsModel = std::variant<LinearPhysics, SecondOrderFrf>;

inline double physics_predict(const PhysicsModel& model, std::span<const double> features) {
  if (features.size() != 1) throw ShapeError("physics models take exactly one feature");
  const double x = features[0];
  return std::visit(
      [x](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearPhysics>) {
          return linear_predict(m, x);
        } else {
          return frf_magnitude(m, x);
        }
      },
      model);
}

inline std::string physics_kind(const PhysicsModel& model) {
  return std::holds_alternative<LinearPhysics>(model) ? "linear" : "second_order_frf";
}

}  // namespace physinet
