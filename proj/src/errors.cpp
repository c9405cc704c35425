#include "zplab/errors.hpp"

namespace zplab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ConstantExpression: return "ConstantExpression";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::PoleAt1: return "PoleAt1";
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::TooFewZeros: return "TooFewZeros";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::LeadingIndexNotFound: return "LeadingIndexNotFound";
    case ErrorCode::TruncationUnstable: return "TruncationUnstable";
    case ErrorCode::NotCertifiable: return "NotCertifiable";
    case ErrorCode::ScanInconclusive: return "ScanInconclusive";
    case ErrorCode::BoundaryZeroSuspected: return "BoundaryZeroSuspected";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
  }
  return "UnknownError";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::ConstantExpression:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConditionViolated:
    case ErrorCode::PoleAt1:
    case ErrorCode::PoleAtNonPositiveInteger:
    case ErrorCode::PoleHit:
    case ErrorCode::RangeExceeded:
    case ErrorCode::TooFewZeros:
      return true;
    default:
      return false;
  }
}

std::string Error::format(ErrorCode code, const std::string& message,
                          std::size_t position) {
  std::string out = error_code_name(code);
  out += ": ";
  out += message;
  if (position != kNoPosition) {
    out += " (at position ";
    out += std::to_string(position);
    out += ")";
  }
  return out;
}

}  // namespace zplab
