#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgecons {

enum class ErrorCode {
  InvalidGraph,
  NotQuasiStronglyConnected,
  EigenFailure,
  SingularTransform,
  NotPositiveStable,
  InfeasibleGain,
  InfeasibleMargin,
  InfeasibleDelta,
  RadiusTooLarge,
  NonFiniteState,
  InsufficientSamples,
  DimensionMismatch,
  InvalidArgument,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; what() is prefixed
// with the error code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace edgecons
