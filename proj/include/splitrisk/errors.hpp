#pragma once

#include <stdexcept>
#include <string>

namespace splitrisk {

// Invalid parameter or argument outside its mathematical domain.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input data contradicts the single-threshold label model.
class ModelViolationError : public std::runtime_error {
 public:
  explicit ModelViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad experiment configuration (unknown keys, contradictory settings).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// I/O or schema problem in an input file.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical routine failed to converge or produced a non-finite result.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace splitrisk
