#pragma once

#include <stdexcept>

namespace circlayout {

/// Invalid parameters or malformed input (CLI exit code 1).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its accuracy contract (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circlayout
