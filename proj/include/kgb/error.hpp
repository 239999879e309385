#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgb {

/// Machine-readable failure categories, surfaced verbatim by the CLI.
enum class ErrorCode {
  kInvalidArgument,
  kUnknownGroup,
  kParameterOutOfRange,
  kInconsistentPresentation,
  kMalformedFile,
  kBudgetExceeded,
  kMismatchedContext,
  kDivisionByZero,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgb
