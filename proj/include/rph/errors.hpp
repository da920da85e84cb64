#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rph {

enum class ErrorCode {
  InvalidSystem,
  SingularExponentMatrix,
  TieDegenerate,
  EmptySupport,
  EmptyInequalities,
  DegenerateConfiguration,
  SingularDirection,
  IntegerOverflow,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::SingularExponentMatrix: return "SingularExponentMatrix";
    case ErrorCode::TieDegenerate: return "TieDegenerate";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::EmptyInequalities: return "EmptyInequalities";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::SingularDirection: return "SingularDirection";
    case ErrorCode::IntegerOverflow: return "IntegerOverflow";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library. The pipeline fills in `stage` before
/// rethrowing so callers can tell which step of a solve broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace rph
