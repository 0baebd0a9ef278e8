#include "oddzeta/errors.hpp"

namespace oddzeta {

const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_argument: return "ZeroArgument";
    case errc::not_agmon: return "NotAgmon";
    case errc::not_principal: return "NotPrincipal";
    case errc::not_elliptic: return "NotElliptic";
    case errc::not_scalar_supported: return "NotScalarSupported";
    case errc::index_out_of_set: return "IndexOutOfSet";
    case errc::index_set_mismatch: return "IndexSetMismatch";
    case errc::mult_mismatch: return "MultMismatch";
    case errc::zero_eigenvalue: return "ZeroEigenvalue";
    case errc::infinite_both_sides: return "InfiniteBothSides";
    case errc::boundary_eigenvalue: return "BoundaryEigenvalue";
    case errc::infinite_on_axis: return "InfiniteOnAxis";
    case errc::not_convergent: return "NotConvergent";
    case errc::pole_hit: return "PoleHit";
    case errc::pole_at_one: return "PoleAtOne";
    case errc::pole_at_zero: return "PoleAtZero";
    case errc::expansion_depth_insufficient: return "ExpansionDepthInsufficient";
    case errc::depth_insufficient: return "DepthInsufficient";
    case errc::fit_unstable: return "FitUnstable";
    case errc::double_pole_detected: return "DoublePoleDetected";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::odd_order_required: return "OddOrderRequired";
    case errc::log_composition_unsupported: return "LogCompositionUnsupported";
    case errc::schema_error: return "SchemaError";
    case errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace oddzeta
