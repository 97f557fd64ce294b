#include "ricci/error.hpp"

namespace ricci {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::BadData: return "BadData";
    case ErrorCode::BadT: return "BadT";
    case ErrorCode::InsufficientGrid: return "InsufficientGrid";
    case ErrorCode::BadModel: return "BadModel";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonPositiveWarp: return "NonPositiveWarp";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::SlopeMismatch: return "SlopeMismatch";
    case ErrorCode::GuardViolated: return "GuardViolated";
    case ErrorCode::DegenerateSlope: return "DegenerateSlope";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::BendTooLarge: return "BendTooLarge";
    case ErrorCode::WrongStage: return "WrongStage";
    case ErrorCode::PipelineFailed: return "PipelineFailed";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ricci
