#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qw {

enum class ErrorCode {
  DivisionByZero,
  ZeroDenominator,
  UnsupportedType,
  UnsupportedField,
  MixedExtension,
  UnresolvedSign,
  NotReduced,
  NotLongest,
  NotFound,
  ZeroTorusEntry,
  CayleyUndefined,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::MixedExtension: return "MixedExtension";
    case ErrorCode::UnresolvedSign: return "UnresolvedSign";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::NotLongest: return "NotLongest";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ZeroTorusEntry: return "ZeroTorusEntry";
    case ErrorCode::CayleyUndefined: return "CayleyUndefined";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Failure of a mathematical precondition. The code identifies the kind of
/// failure; the message carries the offending object in readable form.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qw
