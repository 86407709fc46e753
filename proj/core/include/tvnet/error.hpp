#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvnet {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidState,
  kFactorizationFailure,
  kFormatError,
  kValidationError,
  kDegenerateColumn,
  kInvalidInput,
  kDegenerateTruth,
  kUndefinedVariance,
  kDivergedChain,
  kIoError,
};

/// Stable machine-readable name, e.g. "invalid-parameter".
std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. `field()` names the
/// offending parameter, column or file when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::string field = {});

inline void require(bool ok, ErrorKind kind, const char* message, const char* field = "") {
  if (!ok) fail(kind, message, field);
}

inline void require(bool ok, ErrorKind kind, const std::string& message, const std::string& field = {}) {
  if (!ok) fail(kind, message, field);
}

}  // namespace tvnet
