#include "lifshitz/error.hpp"

namespace lifshitz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::duplicate_site: return "DuplicateSite";
    case ErrorCode::site_out_of_range: return "SiteOutOfRange";
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::eigenvalue_out_of_range: return "EigenvalueOutOfRange";
    case ErrorCode::degenerate_ground_state: return "DegenerateGroundState";
    case ErrorCode::invalid_kind: return "InvalidKind";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::ill_conditioned: return "IllConditioned";
    case ErrorCode::regime_unreachable: return "RegimeUnreachable";
    case ErrorCode::insufficient_sampling: return "InsufficientSampling";
    case ErrorCode::degenerate_interval: return "DegenerateInterval";
    case ErrorCode::empty_series: return "EmptySeries";
    case ErrorCode::usage_error: return "UsageError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace lifshitz
