#pragma once

#include <stdexcept>
#include <string>

namespace cubereg {

enum class ErrorCode {
  ParseError,
  ZeroDenominator,
  Indeterminate,
  ZeroFunction,
  ConstantFunction,
  NonRationalFace,
  InadmissibleInput,
  ZeroTranslation,
  DegreeMismatch,
  TrackingFailure,
  TangentialCrossing,
  TooCloseToSingularity,
  OnBranchCut,
  SingularPoint,
  NonClosedCycle,
};

const char* error_name(ErrorCode code);

// Input errors map to CLI exit code 2, numeric failures to 3.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  // Message without the code and position prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  int line_;
  int column_;
  std::string message_;
};

}  // namespace cubereg
