#pragma once

#include <stdexcept>
#include <string>

namespace wernerqd {

/// Requested dense object exceeds the configured dimension cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix dimensions do not factor or agree as required.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input fails a structural check (Hermiticity, sign of a spectrum entry, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver hit its sweep cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double off_diagonal_norm)
      : std::runtime_error(what), off_diagonal_norm_(off_diagonal_norm) {}

  double off_diagonal_norm() const noexcept { return off_diagonal_norm_; }

 private:
  double off_diagonal_norm_;
};

/// Physical parameter (qubit count, mixing probability, angle) out of range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A derivative or limit was requested where it is not defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad command-line configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace wernerqd
