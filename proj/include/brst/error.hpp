#pragma once

#include <stdexcept>
#include <string>

namespace brst {

enum class ErrorCode {
  NotDivisible,
  ZeroDegree,
  DegreeBoundExceeded,
  NotInvariant,
  NotClosed,
  NotEquivariant,
  NonTerminating,
  UnsupportedN,
  Parse,
  DimensionMismatch,
  Internal,
};

inline const char *error_code_name(ErrorCode c) {
  switch (c) {
  case ErrorCode::NotDivisible: return "NOT_DIVISIBLE";
  case ErrorCode::ZeroDegree: return "ZERO_DEGREE";
  case ErrorCode::DegreeBoundExceeded: return "DEGREE_BOUND_EXCEEDED";
  case ErrorCode::NotInvariant: return "NOT_INVARIANT";
  case ErrorCode::NotClosed: return "NOT_CLOSED";
  case ErrorCode::NotEquivariant: return "NOT_EQUIVARIANT";
  case ErrorCode::NonTerminating: return "NON_TERMINATING";
  case ErrorCode::UnsupportedN: return "UNSUPPORTED_N";
  case ErrorCode::Parse: return "PARSE";
  case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
  case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace brst
