#include "edgecons/errors.hpp"

namespace edgecons {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotQuasiStronglyConnected: return "NotQuasiStronglyConnected";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::NotPositiveStable: return "NotPositiveStable";
    case ErrorCode::InfeasibleGain: return "InfeasibleGain";
    case ErrorCode::InfeasibleMargin: return "InfeasibleMargin";
    case ErrorCode::InfeasibleDelta: return "InfeasibleDelta";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace edgecons
