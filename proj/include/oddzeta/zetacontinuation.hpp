#pragma once

// Analytic continuation of spectral sums
//     s  ->  sum_n mult_n * w_n * lambda_n^s_(theta)
// for model operators and eigenvalue-wise weight families.  Each lattice
// branch is expanded around its leading power; the expansion terms are summed
// in closed form through the Riemann/Hurwitz zeta (branch phases enter only
// through branch_log of the law's leading value), the remainder is summed
// directly, and exceptional eigenvalues are corrected exactly.  Laurent data
// at s = 0 comes from a circle fit cross-validated at half the radius.

#include <complex>
#include <cstdint>

#include "oddzeta/hurwitz.hpp"
#include "oddzeta/spectralmodel.hpp"

namespace oddzeta::zeta {

using cut::SpectralCut;
using model::EigenFamily;
using model::SpectralOperator;

struct ZetaConfig {
  int expansion_depth = 6;        // K: binomial/log expansion depth
  std::int64_t tail_cutoff = 10000;  // N_tail: hard cap for the remainder sum
  double fit_radius = 0.1;        // r_fit for the Laurent circle fit
  int fit_points = 24;
  double eps_cont = 1e-9;
  double eps_laurent = 1e-7;
  double pole_guard = 1e-6;       // double-pole guard / PoleAtZero threshold
};

struct ZetaFunction {
  SpectralOperator op;
  SpectralCut cut;
  EigenFamily weight = EigenFamily::identity();
  ZetaConfig cfg;
};

struct LaurentAt0 {
  cplx pole_coefficient;   // c_{-1}
  cplx finite_part;        // c_0
  cplx derivative_at_0;    // c_1, derivative of the regular part
  double fit_discrepancy;  // max cross-radius disagreement on c_{-1..1}
};

// Direct summation; requires Re(s)*m + deg(weight) < -1.
cplx zeta_direct(const ZetaFunction& Z, cplx s);

// Continued evaluation away from poles.
cplx continue_at(const ZetaFunction& Z, cplx s);

// Laurent data at s = 0 by circle fit of degrees -2..3 (the -2 coefficient is
// a guard and must vanish).
LaurentAt0 laurent_at_0(const ZetaFunction& Z);

// Q-weighted trace: finite part at s = 0 of sum mult_n A_n q_n^s_(theta).
cplx weighted_trace(const EigenFamily& A, const SpectralOperator& Q, const SpectralCut& cut,
                    const ZetaConfig& cfg = {});

// Symmetrized trace: average of the weighted traces at theta and
// theta - m*pi, m = order of Q.  The caller asserts that A is an odd-class
// compatible family.
cplx tr_sym(const EigenFamily& A, const SpectralOperator& Q, double theta,
            const ZetaConfig& cfg = {});

}  // namespace oddzeta::zeta
