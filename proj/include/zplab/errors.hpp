#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zplab {

enum class ErrorCode {
  // input / precondition violations
  SyntaxError,
  ConstantExpression,
  InvalidArgument,
  ConditionViolated,
  PoleAt1,
  PoleAtNonPositiveInteger,
  PoleHit,
  RangeExceeded,
  TooFewZeros,
  // numerical failures
  PrecisionUnreachable,
  LeadingIndexNotFound,
  TruncationUnstable,
  NotCertifiable,
  ScanInconclusive,
  BoundaryZeroSuspected,
  QuadratureUnstable,
  NewtonDiverged,
};

const char* error_code_name(ErrorCode code);

// true for errors caused by bad input rather than by numerics (CLI exit 2 vs 3)
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);

  Error(ErrorCode code, std::string message, std::size_t position = kNoPosition)
      : std::runtime_error(format(code, message, position)),
        code_(code),
        position_(position) {}

  ErrorCode code() const { return code_; }
  std::size_t position() const { return position_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::size_t position);

  ErrorCode code_;
  std::size_t position_;
};

[[noreturn]] inline void raise(ErrorCode code, std::string message,
                               std::size_t position = Error::kNoPosition) {
  throw Error(code, std::move(message), position);
}

}  // namespace zplab
