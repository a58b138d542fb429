#pragma once

#include <stdexcept>
#include <string>

namespace netlab {

// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric breakdown: non-finite intermediates, non-convergence treated as fatal,
// degenerate inputs for a statistical routine.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration (infeasible simulation parameters, bad ranges).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netlab
