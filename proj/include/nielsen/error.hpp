#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nielsen {

enum class ErrorKind {
  // group construction
  Malformed,
  NotClosed,
  NoIdentityAtZero,
  NoInverse,
  NotAssociative,
  IndexOutOfRange,
  NotNormal,
  // homomorphisms and characters
  NotAHomomorphism,
  IdentityNotPreserved,
  NotMultiplicative,
  IdentityNotPositive,
  MismatchedDomains,
  BudgetExceeded,
  // semi-index and coverings
  DuplicateClass,
  NotLiftable,
  SourceOrientable,
  TargetNonorientable,
  // instance files and generation
  SyntaxError,
  ValidationError,
  MissingSection,
  GenerationExhausted,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NoIdentityAtZero: return "NoIdentityAtZero";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::IdentityNotPreserved: return "IdentityNotPreserved";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::IdentityNotPositive: return "IdentityNotPositive";
    case ErrorKind::MismatchedDomains: return "MismatchedDomains";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DuplicateClass: return "DuplicateClass";
    case ErrorKind::NotLiftable: return "NotLiftable";
    case ErrorKind::SourceOrientable: return "SourceOrientable";
    case ErrorKind::TargetNonorientable: return "TargetNonorientable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::MissingSection: return "MissingSection";
    case ErrorKind::GenerationExhausted: return "GenerationExhausted";
  }
  return "Unknown";
}

// Every construction failure in the library surfaces as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nielsen
