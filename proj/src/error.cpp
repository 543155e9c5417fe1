#include "definetti/error.hpp"

namespace definetti {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::NoRootInRange: return "NoRootInRange";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::NegativeState: return "NegativeState";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::MinimizationFailure: return "MinimizationFailure";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace definetti
