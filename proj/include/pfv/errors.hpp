#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfv {

enum class ErrorCode {
  Parse,
  ContentNotOne,
  NotPrime,
  FactorizationFailed,
  EffortExceeded,
  DegreeTooSmall,
  FixedDivisorPresent,
  TruncationTooSmall,
  MismatchedField,
  NonMonic,
  SingularPolynomial,
  NonConvergence,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors that signal a violated hypothesis on f rather than a failed computation.
inline bool is_hypothesis_violation(ErrorCode c) {
  return c == ErrorCode::FixedDivisorPresent || c == ErrorCode::ContentNotOne;
}

}  // namespace pfv
