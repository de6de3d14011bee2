#pragma once

#include <stdexcept>
#include <string>

namespace ipm {

// Raised when progressions that must chain into a single progression do not.
// Always an internal bug; never repaired silently.
struct ChainViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when a locator input set is not sparse enough for its block width.
struct SparsityViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when candidate construction exceeds its retry budget.
struct AttemptCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a query violates its documented precondition (e.g. |y| > 2|x|).
struct ConstraintViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised while decoding a malformed or incompatible index file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ipm
