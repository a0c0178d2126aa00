#pragma once

#include <stdexcept>
#include <string>

namespace qrefl {

// Invalid argument outside an operation's mathematical domain (z <= 0, k <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad model/option configuration or unreadable input. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Potential-table ingestion failure; carries the 1-based offending line.
class IngestionError : public ConfigError {
 public:
  IngestionError(const std::string& path, int line, const std::string& what)
      : ConfigError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Numerical failure: non-convergence, singular pivots, poles. Maps to CLI exit code 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Singular pivot / vanishing denominator in the S-matrix and ERE algebra.
class SingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qrefl
