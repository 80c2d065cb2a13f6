#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liepose {

enum class ErrorCode {
  kNotSkew,
  kNearPiRotation,
  kCoincidentPositions,
  kPolarSingularity,
  kSingularNuisanceBlock,
  kUnobservableState,
  kSingularJacobian,
  kSingularNormalEquations,
  kSingularInnovationCovariance,
  kGimbalLock,
  kLengthMismatch,
  kInvalidArgument,
  kConfigError,
  kIoError,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSkew: return "NotSkew";
    case ErrorCode::kNearPiRotation: return "NearPiRotation";
    case ErrorCode::kCoincidentPositions: return "CoincidentPositions";
    case ErrorCode::kPolarSingularity: return "PolarSingularity";
    case ErrorCode::kSingularNuisanceBlock: return "SingularNuisanceBlock";
    case ErrorCode::kUnobservableState: return "UnobservableState";
    case ErrorCode::kSingularJacobian: return "SingularJacobian";
    case ErrorCode::kSingularNormalEquations: return "SingularNormalEquations";
    case ErrorCode::kSingularInnovationCovariance: return "SingularInnovationCovariance";
    case ErrorCode::kGimbalLock: return "GimbalLock";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace liepose
