#pragma once

#include <stdexcept>
#include <string>

namespace agassi {

/// Malformed argument: bad label, out-of-range mode, mismatched sizes.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a dense-representation memory guard.
struct capacity_error : std::length_error {
  using std::length_error::length_error;
};

/// Valid input that a routine only implements for a subset of models (e.g. j != 1).
struct unsupported_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct compilation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace agassi
