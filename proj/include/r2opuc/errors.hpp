#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace r2opuc {

enum class ErrorCode {
  NotAChainSequence,
  DepthInsufficient,
  DegreeOutOfRange,
  CoincidentPoints,
  DeflationResidual,
  DimensionTooSmall,
  NotPositiveDefinite,
  ConvergenceFailure,
  BracketFailure,
  DegenerateTau,
  TauCollision,
  RequiresMultipleParameter,
  UnsupportedExample,
  PoleInC,
  ParameterOutOfDomain,
  InvalidInput,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Numerical or domain failure raised by every module of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace r2opuc
