#pragma once

#include <stdexcept>
#include <string>

namespace collfree {

enum class ErrorCode {
  NonFinite,
  IdenticalParticle,
  DegenerateVelocity,
  ZeroDirection,
  OutOfDomain,
  EmptyWindow,
  NonMonotoneProfile,
  BadRange,
  DuplicateParticle,
  NotUniformlyDiscrete,
  HardCoreNotVerified,
  RadiusTooLarge,
  ZeroAxis,
  DegenerateSegment,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception type; callers
// switch on code() when they need to tell failure modes apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace collfree
