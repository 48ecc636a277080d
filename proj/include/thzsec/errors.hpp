#pragma once

#include <stdexcept>
#include <string>

namespace thzsec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Geometry that cannot be realized (e.g. a 3 dB cone that never meets the floor).
class InfeasibleGeometry : public DomainError {
 public:
  explicit InfeasibleGeometry(const std::string& what) : DomainError(what) {}
};

/// Legitimate receiver placed outside the 3 dB cell of a ceiling transmitter.
class OutOfCell : public DomainError {
 public:
  explicit OutOfCell(const std::string& what) : DomainError(what) {}
};

/// No code parameters meet the reliability target.
class InfeasiblePlan : public std::runtime_error {
 public:
  explicit InfeasiblePlan(const std::string& what) : std::runtime_error(what) {}
};

/// Operation not defined for the given scenario variant.
class Unsupported : public std::logic_error {
 public:
  explicit Unsupported(const std::string& what) : std::logic_error(what) {}
};

/// Numerical post-condition violated (e.g. a profile expected to be monotone is not).
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or incomplete run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

inline void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0)) {
    throw DomainError(std::string(name) + " must be non-negative, got " + std::to_string(value));
  }
}

}  // namespace detail
}  // namespace thzsec
