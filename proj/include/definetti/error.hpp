#pragma once

#include <stdexcept>
#include <string>

namespace definetti {

enum class ErrorCode {
  NonPositiveParameter = 1,
  InvalidArgument,
  NoSignChange,
  MaxIterExceeded,
  NoRootInRange,
  TargetUnreachable,
  NegativeState,
  QuadratureFailure,
  MinimizationFailure,
  InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace definetti
