#pragma once

#include <stdexcept>
#include <string>

namespace physinet {

/// Invalid construction parameters (layer sizes, generator ranges, trainer settings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dimension mismatch between a network, its inputs, or its gradients.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated an operation precondition (empty batch, mismatched lengths).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed CSV or JSON input; the message carries the offending location.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace physinet
