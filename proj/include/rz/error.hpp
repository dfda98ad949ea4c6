#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rz {

/// Machine-readable failure categories. The CLI maps them onto exit codes.
enum class ErrorCode {
  kDimensionMismatch,
  kCapacity,
  kDomain,     // precondition on the mathematical input violated
  kParse,
  kNumerical,  // a residual or certificate check failed
  kUsage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace rz
