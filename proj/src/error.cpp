#include "cubereg/error.hpp"

namespace cubereg {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::NonRationalFace: return "NonRationalFace";
    case ErrorCode::InadmissibleInput: return "InadmissibleInput";
    case ErrorCode::ZeroTranslation: return "ZeroTranslation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::TrackingFailure: return "TrackingFailure";
    case ErrorCode::TangentialCrossing: return "TangentialCrossing";
    case ErrorCode::TooCloseToSingularity: return "TooCloseToSingularity";
    case ErrorCode::OnBranchCut: return "OnBranchCut";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NonClosedCycle: return "NonClosedCycle";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::Indeterminate:
    case ErrorCode::ZeroFunction:
    case ErrorCode::ConstantFunction:
    case ErrorCode::NonRationalFace:
    case ErrorCode::InadmissibleInput:
    case ErrorCode::ZeroTranslation:
    case ErrorCode::DegreeMismatch:
      return true;
    default:
      return false;
  }
}

static std::string decorate(ErrorCode code, const std::string& message, int line, int column) {
  std::string out = std::string(error_name(code)) + ": ";
  if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  return out + message;
}

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(decorate(code, message, line, column)), code_(code), line_(line), column_(column), message_(message) {}

}  // namespace cubereg
