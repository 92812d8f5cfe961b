#pragma once

#include <stdexcept>
#include <string>

namespace tilt {

enum class ErrorCode {
  InvalidArgument,
  DegenerateTransform,
  GridTooSmall,
  ZeroWindow,
  UnsupportedGroup,
  SvdFailure,
  PoorlyConditionedJacobian,
  ImmediateBoundaryFailure,
  InsufficientSupport,
  AllBranchesFailed,
  BadGeometry,
  IoError,
  ConfigError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace tilt
