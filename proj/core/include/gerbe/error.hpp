#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gerbe {

enum class ErrorCode {
  EmptyInput,
  InvalidInput,
  DuplicateSimplex,
  NonManifold,
  NonOrientable,
  DegreeOutOfRange,
  DegreeOverflow,
  ResolutionTooSmall,
  OverflowPolicy,
  NotACycle,
  NotABoundary,
  NotUnimodular,
  SingularPairing,
  RankAmbiguous,
  SingularMass,
  SolverDiverged,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal a violated numerical or algebraic invariant
/// rather than bad input.
bool is_invariant_violation(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gerbe
