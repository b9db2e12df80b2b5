#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frx {

enum class ErrorCode {
  NonPositiveDensity,
  AlphaOutOfRange,
  NonFiniteInput,
  PressurelessNotApplicable,
  RegionMismatch,
  OutsideFan,
  NegativeTime,
  Unreachable,
  UnsupportedQuadOrder,
  CaseMismatch,
  CflViolation,
  WindowOutOfDomain,
  TimeMismatch,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::PressurelessNotApplicable: return "PressurelessNotApplicable";
    case ErrorCode::RegionMismatch: return "RegionMismatch";
    case ErrorCode::OutsideFan: return "OutsideFan";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::UnsupportedQuadOrder: return "UnsupportedQuadOrder";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::WindowOutOfDomain: return "WindowOutOfDomain";
    case ErrorCode::TimeMismatch: return "TimeMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message starts with the code name so command-line diagnostics can be
/// matched textually.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace frx
