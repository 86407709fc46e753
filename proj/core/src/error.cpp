#include "tvnet/error.hpp"

namespace tvnet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidState: return "invalid-state";
    case ErrorKind::kFactorizationFailure: return "factorization-failure";
    case ErrorKind::kFormatError: return "format-error";
    case ErrorKind::kValidationError: return "validation-error";
    case ErrorKind::kDegenerateColumn: return "degenerate-column";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kDegenerateTruth: return "degenerate-truth";
    case ErrorKind::kUndefinedVariance: return "undefined-variance";
    case ErrorKind::kDivergedChain: return "diverged-chain";
    case ErrorKind::kIoError: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string field)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      field_(std::move(field)) {}

void fail(ErrorKind kind, const std::string& message, std::string field) {
  throw Error(kind, message, std::move(field));
}

}  // namespace tvnet
