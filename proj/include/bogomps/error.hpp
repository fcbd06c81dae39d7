#pragma once

#include <stdexcept>
#include <string>

namespace bogomps {

enum class ErrorCode {
  NotSymmetric,
  NotPositiveDefinite,
  Unphysical,
  NumericalFailure,
  DegeneracyUnresolved,
  NotSymplectic,
  UNotInvertible,
  ImpureResidual,
  BondOverflow,
  ModeCollision,
  Overflow,
  DimensionMismatch,
  OccupationOutOfRange,
  ShapeMismatch,
  GuardExceeded,
  InvalidArgument,
  ParseError,
};

const char* error_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(what) {}
  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace bogomps
