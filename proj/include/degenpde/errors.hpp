#pragma once

#include <stdexcept>
#include <string>

namespace degenpde {

enum class errc {
  none = 0,
  non_positive_parameter,
  invalid_regime,
  excluded_case,
  wrong_regime,
  out_of_range,
  domain_error,
  missing_dependency,
  convergence_failure,
  shooting_diverged,
  front_not_bracketed,
  grid_too_coarse,
  stability_failure,
  non_finite_value,
  interface_left_domain,
  insufficient_data,
  insufficient_range,
  shape_missing,
  unknown_barrier,
  missing_constant,
  invalid_argument,
};

const char* errc_name(errc c) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace degenpde
