#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srdsm {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  parse_error,
  schema_mismatch,
  admissibility,
  numerical_failure,
  singularity,
  degenerate,
  io_error,
  empty_input,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code drives CLI exit status.
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

}  // namespace srdsm
