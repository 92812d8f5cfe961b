#include "tilt/error.hpp"

namespace tilt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateTransform: return "DegenerateTransform";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::ZeroWindow: return "ZeroWindow";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::PoorlyConditionedJacobian: return "PoorlyConditionedJacobian";
    case ErrorCode::ImmediateBoundaryFailure: return "ImmediateBoundaryFailure";
    case ErrorCode::InsufficientSupport: return "InsufficientSupport";
    case ErrorCode::AllBranchesFailed: return "AllBranchesFailed";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace tilt
