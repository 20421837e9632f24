#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace physinet {

// SplitMix64 (Steele, Lea & Flood 2014) with 64 bits of state.
//
// Every variate is built from this stream with fixed arithmetic so the
// sequence is identical on every platform:
//   uniform()  : top 53 bits of one word, scaled by 2^-53, in [0, 1)
//   normal()   : Box-Muller cosine branch over two words, u1 = 1 - uniform()
//                in (0, 1], u2 = uniform(); no cached second variate
//   below(n)   : uniform() * n truncated, used for Fisher-Yates shuffles
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double low, double high) noexcept {
    return low + (high - low) * uniform();
  }

  double normal() noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

  constexpr std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  /// Seed for an independent sub-stream of a run (data, init, shuffling...).
  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL));
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace physinet
