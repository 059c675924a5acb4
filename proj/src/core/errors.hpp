#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Failure categories shared by every module; the C API maps them 1:1 onto status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  DivisionByZero,
  IncompatibleField,
  SpaceNotPreserved,
  NotHeunOperator,
  NotAlgebraizable,
  WrongLeadingShape,
  DecoupledModel,
  CouplingOutOfRange,
  ZeroCoupling,
  NotAnEigenvalue,
  TruncationTooSmall,
  NumericalFailure,
  InputOutOfValidatedRange,
  InvalidRange,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qes
