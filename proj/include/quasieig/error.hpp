#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qe {

enum class ErrorKind {
  DimensionMismatch,
  NonFinite,
  NonSquare,
  ParseError,
  ConvergenceFailure,
  NumericalBreakdown,
  DegeneratePairing,
  NotInCone,
  DegenerateBasis,
  UnsupportedDimension,
  NotInterior,
  NotNormal,
  NotOrthogonal,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` discriminates the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of an iterative numerical kernel (as opposed to bad input).
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::ConvergenceFailure || kind_ == ErrorKind::NumericalBreakdown;
  }

 private:
  ErrorKind kind_;
};

}  // namespace qe
