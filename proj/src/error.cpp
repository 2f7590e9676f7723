#include "quasieig/error.hpp"

namespace qe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::NotInCone: return "NotInCone";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qe
