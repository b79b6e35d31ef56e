#include "r2opuc/errors.hpp"

namespace r2opuc {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAChainSequence: return "NotAChainSequence";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DeflationResidual: return "DeflationResidual";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DegenerateTau: return "DegenerateTau";
    case ErrorCode::TauCollision: return "TauCollision";
    case ErrorCode::RequiresMultipleParameter: return "RequiresMultipleParameter";
    case ErrorCode::UnsupportedExample: return "UnsupportedExample";
    case ErrorCode::PoleInC: return "PoleInC";
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace r2opuc
