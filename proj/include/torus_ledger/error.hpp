#pragma once

#include <stdexcept>
#include <string>

namespace torus_ledger {

enum class ErrorKind {
  InvalidInput,
  DomainError,
  CompositionError,
  PlanError,
  InvalidTube,
  DepthError,
  NoWitness,
  InvalidSequence,
  TraceRefused,
  SearchExhausted,
  ReplayMismatch,
  PropertyViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::CompositionError: return "composition-error";
    case ErrorKind::PlanError: return "plan-error";
    case ErrorKind::InvalidTube: return "invalid-tube";
    case ErrorKind::DepthError: return "depth-error";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::InvalidSequence: return "invalid-sequence";
    case ErrorKind::TraceRefused: return "trace-refused";
    case ErrorKind::SearchExhausted: return "search-exhausted";
    case ErrorKind::ReplayMismatch: return "replay-mismatch";
    case ErrorKind::PropertyViolation: return "property-violation";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace torus_ledger
