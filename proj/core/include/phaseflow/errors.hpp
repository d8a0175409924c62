#pragma once

#include <stdexcept>
#include <string>

namespace phaseflow {

enum class ErrorCode {
  InvalidExtent,
  TooCoarse,
  GridTooSmall,
  GridTooCoarse,
  GridMismatch,
  QuadratureUnderresolved,
  EnergyDrift,
  TooFewSamples,
  OutflowDetected,
  GaugeUnsupported,
  StationaryPoint,
  NoClosedOrbit,
  EnergyBelowMinimum,
  RootNotBracketed,
  OrbitOutsideGrid,
  AmplitudeZeroOnOrbit,
  AllMasked,
  SingularJacobian,
  DegreeTooHigh,
  UsageError,
};

const char* to_string(ErrorCode code);

/// Domain error carrying one of the named codes above. The CLI maps these
/// to exit code 1 and prints "error[<code>]: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace phaseflow
