#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pentagram {

enum class ErrorCode {
  NotCoprime,
  Degenerate,
  SignUnsolvable,
  NormalizationBroken,
  NoIntersection,
  NotTransverse,
  ZeroDenominator,
  NoRealSolution,
  ZeroParameter,
  GenerationFailed,
  InputError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::SignUnsolvable: return "SignUnsolvable";
    case ErrorCode::NormalizationBroken: return "NormalizationBroken";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pentagram
