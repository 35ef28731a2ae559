#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace udqkd {

enum class ErrorCode {
  InvalidParameter,
  NonPositiveDefinite,
  NumericalDegeneracy,
  DomainError,
  SingularConditioning,
  UnphysicalState,
  UnphysicalObservation,
  InternalConsistency,
  NoPositiveRate,
  NoRoot,
  ConfigError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularConditioning: return "SingularConditioning";
    case ErrorCode::UnphysicalState: return "UnphysicalState";
    case ErrorCode::UnphysicalObservation: return "UnphysicalObservation";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::NoPositiveRate: return "NoPositiveRate";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace udqkd
