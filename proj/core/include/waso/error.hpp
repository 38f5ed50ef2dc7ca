#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace waso {

enum class ErrorCode {
  InvalidArgument,
  InvalidMember,
  Infeasible,
  InfeasibleStart,
  EmptyCandidate,
  ScaleGuard,
  LengthMismatch,
  Parse,
  NotFound,
  NotSolved,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code selects the error class
/// (CLI exit status, HTTP status and JSON error body all key off it).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace waso
