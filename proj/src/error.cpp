#include "srdsm/error.hpp"

namespace srdsm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::schema_mismatch: return "schema_mismatch";
    case ErrorCode::admissibility: return "admissibility";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::empty_input: return "empty_input";
  }
  return "unknown";
}

}  // namespace srdsm
