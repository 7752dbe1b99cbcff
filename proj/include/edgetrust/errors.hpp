#pragma once

#include <stdexcept>
#include <string>

namespace edgetrust {

enum class ErrorCode {
  encoding_overflow,
  invalid_identity,
  duplicate_identity,
  not_registered,
  wrong_device,
  invalid_window,
  empty_aggregate,
  parse_error,
  integrity_error,
  io_error,
};

/// Library-wide exception type. The code tells callers (and the CLI exit-code
/// mapping) which failure class they are looking at.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace edgetrust
