#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace godelstr {

enum class ErrorCode {
  Syntax,
  MalformedEscape,
  ArityMismatch,
  CycleDetected,
  UnboundVariable,
  PreconditionViolated,
  NotHalted,
  AlreadyHalted,
  MachineFormat,
  NotHaltedWithinFuel,
  BadInput,
};

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t kNoPos = static_cast<std::size_t>(-1);

  Error(ErrorCode code, std::string message, std::size_t pos = kNoPos)
      : std::runtime_error(pos == kNoPos ? message
                                         : message + " (at offset " + std::to_string(pos) + ")"),
        code_(code),
        pos_(pos) {}

  ErrorCode code() const { return code_; }
  std::size_t pos() const { return pos_; }

 private:
  ErrorCode code_;
  std::size_t pos_;
};

inline Error syntax_error(const std::string& msg, std::size_t pos) {
  return Error(ErrorCode::Syntax, msg, pos);
}

}  // namespace godelstr
