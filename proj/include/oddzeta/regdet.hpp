#pragma once

// Determinant engine on top of the zeta continuation: zeta-regularized
// log-determinants, symmetrized determinants (two-cut average), the square
// identity for odd order, angle dependence, the symmetric-spectrum sign law,
// and multiplicativity of the symmetrized determinant for commuting models.

#include <complex>
#include <optional>

#include "oddzeta/zetacontinuation.hpp"

namespace oddzeta::det {

using cplx = std::complex<double>;
using cut::SpectralCut;
using model::SpectralOperator;
using zeta::ZetaConfig;

struct DetResult {
  cplx log_det;
  cplx det;             // exp(log_det)
  double angle_used;
  double partner_angle;  // theta - m*pi for symmetrized results, else angle_used
  double fit_discrepancy;
};

// d/ds at 0 of the continued spectral sum of A^s along the cut.  Errors with
// PoleAtZero when the continuation has a pole at 0.
DetResult log_det(const SpectralOperator& A, const SpectralCut& cut, const ZetaConfig& cfg = {});

// Symmetrized determinant: average of the log-determinants at theta and
// theta - m*pi.
DetResult log_det_sym(const SpectralOperator& A, double theta, const ZetaConfig& cfg = {});

// Exact shift of log Det^sym when finitely many eigenvalues are modified:
// the sum over differing indices of the branch-consistent log factors,
// averaged over the two cuts.  Oracle for every sign claim.
cplx log_det_sym_shift(const SpectralOperator& base, const SpectralOperator& modified,
                       double theta);

struct SquareCheck {
  cplx lhs;  // Det^sym_(2 theta)(A^2)
  cplx rhs;  // (Det^sym_(theta) A)^2
  bool pass;
};
SquareCheck check_det_square(const SpectralOperator& A, double theta, double eps_det = 1e-8,
                             const ZetaConfig& cfg = {});

struct AngleCheck {
  cplx difference;          // log Det^sym at theta1 minus at theta2
  bool multiple_of_i_pi;
  double residual;          // distance of the difference to i*pi*Z
};
AngleCheck check_angle_dependence(const SpectralOperator& A, double theta1, double theta2,
                                  double eps_angle = 1e-6, const ZetaConfig& cfg = {});

struct SignCheck {
  int m_plus;
  int predicted_sign;        // (-1)^{m_+}
  int measured_sign;         // sign of Re(Det^sym)
  double imaginary_residual;  // |Im log Det^sym mod pi|
  double theorem_residual;    // |Im log Det^sym + m_+ pi| mod 2 pi
  cplx log_det_sym_value;
};
SignCheck sign_symmetric(const SpectralOperator& A, double theta, const ZetaConfig& cfg = {});

// Angle recipe for products of commuting models: theta_B + eps*theta_A with
// eps = +1 for theta_A in (0,pi) and -1 for theta_A in (pi,2pi).
double product_angle(double theta_A, double theta_B);

struct MultCheck {
  cplx ratio;  // Det^sym(AB) / (Det^sym A * Det^sym B)
  int sign;    // the branch of +-1 the ratio lands on
  bool pass;
  double theta_AB;
};
MultCheck multiplicativity_check(const SpectralOperator& A, const SpectralOperator& B,
                                 double theta_A, double theta_B,
                                 std::optional<double> theta_AB = std::nullopt,
                                 double eps_mult = 1e-5, const ZetaConfig& cfg = {});

}  // namespace oddzeta::det
