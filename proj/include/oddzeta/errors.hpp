#pragma once

#include <stdexcept>
#include <string>

namespace oddzeta {

// Every failure mode the library reports. The CLI maps these to exit codes.
enum class errc {
  zero_argument,
  not_agmon,
  not_principal,
  not_elliptic,
  not_scalar_supported,
  index_out_of_set,
  index_set_mismatch,
  mult_mismatch,
  zero_eigenvalue,
  infinite_both_sides,
  boundary_eigenvalue,
  infinite_on_axis,
  not_convergent,
  pole_hit,
  pole_at_one,
  pole_at_zero,
  expansion_depth_insufficient,
  depth_insufficient,
  fit_unstable,
  double_pole_detected,
  hypothesis_violated,
  not_symmetric,
  odd_order_required,
  log_composition_unsupported,
  schema_error,
  config_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace oddzeta
