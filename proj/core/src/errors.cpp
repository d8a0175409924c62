#include "phaseflow/errors.hpp"

namespace phaseflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidExtent: return "InvalidExtent";
    case ErrorCode::TooCoarse: return "TooCoarse";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::QuadratureUnderresolved: return "QuadratureUnderresolved";
    case ErrorCode::EnergyDrift: return "EnergyDrift";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::OutflowDetected: return "OutflowDetected";
    case ErrorCode::GaugeUnsupported: return "GaugeUnsupported";
    case ErrorCode::StationaryPoint: return "StationaryPoint";
    case ErrorCode::NoClosedOrbit: return "NoClosedOrbit";
    case ErrorCode::EnergyBelowMinimum: return "EnergyBelowMinimum";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::OrbitOutsideGrid: return "OrbitOutsideGrid";
    case ErrorCode::AmplitudeZeroOnOrbit: return "AmplitudeZeroOnOrbit";
    case ErrorCode::AllMasked: return "AllMasked";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace phaseflow
