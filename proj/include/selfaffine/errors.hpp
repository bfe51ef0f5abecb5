#pragma once

#include <stdexcept>
#include <string>

namespace selfaffine {

// Raised for malformed or out-of-domain input (bad rationals, non-expanding
// polynomials, digit sets violating their invariants, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The instance is too large for the configured resource limits. This is not
// a mathematical verdict.
class StateLimitExceeded : public std::runtime_error {
 public:
  explicit StateLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selfaffine
