#pragma once

#include <stdexcept>
#include <string>

namespace pfm {

// Malformed or inconsistent input data (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands whose sizes do not fit together.
class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// A tractability guard refused the request (search sizes, torus-mode shift counts).
class GuardError : public InputError {
 public:
  using InputError::InputError;
};

// A mathematical precondition does not hold, e.g. a non-holomorphic bundle
// passed to an operation that needs AT = (AT)^t.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace pfm
