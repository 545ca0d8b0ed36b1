#include "gerbe/error.hpp"

namespace gerbe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
    case ErrorCode::OverflowPolicy: return "OverflowPolicy";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotABoundary: return "NotABoundary";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::SingularMass: return "SingularMass";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_invariant_violation(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnimodular:
    case ErrorCode::SingularPairing:
    case ErrorCode::RankAmbiguous:
    case ErrorCode::SingularMass:
    case ErrorCode::SolverDiverged:
    case ErrorCode::OverflowPolicy:
      return true;
    default:
      return false;
  }
}

}  // namespace gerbe
