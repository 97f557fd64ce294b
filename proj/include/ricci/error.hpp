#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ricci {

enum class ErrorCode {
  NonSymmetric,
  BadCount,
  TooLarge,
  NotOrthonormal,
  NotUnit,
  BadK,
  BadData,
  BadT,
  InsufficientGrid,
  BadModel,
  BadDim,
  OutOfDomain,
  NonPositiveWarp,
  BadParams,
  NoBracket,
  SlopeMismatch,
  GuardViolated,
  DegenerateSlope,
  BadLambda,
  BendTooLarge,
  WrongStage,
  PipelineFailed,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ricci
