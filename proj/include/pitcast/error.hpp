#pragma once

#include <stdexcept>
#include <string>

namespace pitcast {

/// Error categories, mapped one-to-one onto CLI exit codes.
enum class ErrorCategory {
  kValidation = 2,
  kBoundaryEvidence = 3,
  kIo = 4,
  kInternal = 5,
};

[[nodiscard]] const char* category_name(ErrorCategory category) noexcept;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Malformed or out-of-range input (NaN, probability outside [0,1], k > n, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorCategory::kValidation, message) {}
};

/// Input inside the nominal range but outside the domain of a transform,
/// e.g. the quantile of 0 or 1.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCategory::kValidation, message) {}
};

/// Parameters violating a named model restriction.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorCategory::kValidation, message) {}
};

/// Zero or all defaults observed: the point estimator has no finite root.
class BoundaryEvidenceError : public Error {
 public:
  explicit BoundaryEvidenceError(const std::string& message)
      : Error(ErrorCategory::kBoundaryEvidence, message) {}
};

/// A requested combination of options that is not defined (e.g. AR(2) with
/// a Bayesian factor).
class UnsupportedMode : public Error {
 public:
  explicit UnsupportedMode(const std::string& message)
      : Error(ErrorCategory::kValidation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCategory::kIo, message) {}
};

}  // namespace pitcast
