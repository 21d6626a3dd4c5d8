#pragma once

#include <stdexcept>
#include <string>

namespace wplab {

// Invalid scenario/domain/grid configuration. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Out-of-range numeric parameter (p <= 1, beta <= 1, ...).
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input field violates a functional's domain (interior zeros, zero denominator).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wplab
