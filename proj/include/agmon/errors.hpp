#pragma once

#include <stdexcept>
#include <string>

namespace agmon {

// Every failure mode the library reports deliberately.  Callers that need to
// branch on the cause catch agmon::error and switch on code(); the message
// always names the offending vertex/edge/field.
enum class errc {
  // graph construction / validation
  asymmetric_adjacency,
  self_loop,
  duplicate_edge,
  disconnected,
  isolated_vertex,
  size_too_small,
  retries_exhausted,
  // file I/O
  parse_error,
  schema_violation,
  io_error,
  // operator / solver
  size_mismatch,
  size_cap_exceeded,
  convergence_failure,
  zero_vector,
  // metric
  empty_allowed_region,
  target_not_allowed,
  // bound verification
  energy_mismatch,
  start_not_forbidden,
  zero_amplitude_start,
  // random-walk bound
  no_forbidden_region,
  step_cap_exceeded,
  // argument validation that fits nothing above
  bad_argument,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace agmon
