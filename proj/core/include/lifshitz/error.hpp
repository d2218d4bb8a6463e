#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lifshitz {

enum class ErrorCode {
  invalid_argument,
  duplicate_site,
  site_out_of_range,
  not_hermitian,
  eigenvalue_out_of_range,
  degenerate_ground_state,
  invalid_kind,
  insufficient_data,
  ill_conditioned,
  regime_unreachable,
  insufficient_sampling,
  degenerate_interval,
  empty_series,
  usage_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports is an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lifshitz
