#pragma once

#include <stdexcept>
#include <string>

namespace crisiscomm {

// Bad input data: malformed records, negative counts, duplicate keys,
// an empty corpus after filtering, a degenerate vocabulary.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A date that falls outside the configured analysis window.
class OutOfWindowError : public DataError {
 public:
  using DataError::DataError;
};

// Invalid parameters handed to an operation (K < 1, non-finite
// hyperparameters, mismatched dimensions, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace crisiscomm
