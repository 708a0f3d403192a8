#pragma once

#include <stdexcept>
#include <string>

namespace cyl {

// Precondition or domain violation in a numerical operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A run-time diagnostic failed, e.g. mass reached the edge of the truncated x-box.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unknown configuration (exit code 2 in the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyl
