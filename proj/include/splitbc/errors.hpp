#pragma once

#include <stdexcept>
#include <string>

namespace splitbc {

// Two families: bad input (ConfigError) and failed numerics (NumericError).
// The CLI maps them to exit codes 2 and 3.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGridError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class RegistryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnsupportedCoefficientError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FlowDomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace splitbc
