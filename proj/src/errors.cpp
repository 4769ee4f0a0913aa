#include "agmon/errors.hpp"

namespace agmon {

const char* errc_name(errc code) {
  switch (code) {
    case errc::asymmetric_adjacency: return "AsymmetricAdjacency";
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::disconnected: return "Disconnected";
    case errc::isolated_vertex: return "IsolatedVertex";
    case errc::size_too_small: return "SizeTooSmall";
    case errc::retries_exhausted: return "RetriesExhausted";
    case errc::parse_error: return "ParseError";
    case errc::schema_violation: return "SchemaViolation";
    case errc::io_error: return "IoError";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::zero_vector: return "ZeroVector";
    case errc::empty_allowed_region: return "EmptyAllowedRegion";
    case errc::target_not_allowed: return "TargetNotAllowed";
    case errc::energy_mismatch: return "EnergyMismatch";
    case errc::start_not_forbidden: return "StartNotForbidden";
    case errc::zero_amplitude_start: return "ZeroAmplitudeStart";
    case errc::no_forbidden_region: return "NoForbiddenRegion";
    case errc::step_cap_exceeded: return "StepCapExceeded";
    case errc::bad_argument: return "BadArgument";
  }
  return "UnknownError";
}

}  // namespace agmon
