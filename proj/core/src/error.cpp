#include "collfree/error.hpp"

namespace collfree {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::IdenticalParticle: return "IdenticalParticle";
    case ErrorCode::DegenerateVelocity: return "DegenerateVelocity";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NonMonotoneProfile: return "NonMonotoneProfile";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::DuplicateParticle: return "DuplicateParticle";
    case ErrorCode::NotUniformlyDiscrete: return "NotUniformlyDiscrete";
    case ErrorCode::HardCoreNotVerified: return "HardCoreNotVerified";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::ZeroAxis: return "ZeroAxis";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace collfree
