#include "oddzeta/regdet.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oddzeta::det {

namespace {

using model::EigenFamily;
using zeta::LaurentAt0;
using zeta::ZetaFunction;

double dist_to_multiples(double x, double step) {
  const double r = x - step * std::round(x / step);
  return std::abs(r);
}

// arg in the half-open angular interval (lo, hi] mod 2 pi
bool arg_in_half_open(double a, double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0) return false;
  if (span >= cut::two_pi) return true;
  const double u = cut::wrap_2pi(a - lo);
  return u > 0.0 && u <= span;
}

}  // namespace

DetResult log_det(const SpectralOperator& A, const SpectralCut& cut_, const ZetaConfig& cfg) {
  ZetaFunction Z{A, cut_, EigenFamily::identity(), cfg};
  const LaurentAt0 L = zeta::laurent_at_0(Z);
  const double scale = 1.0 + std::abs(L.finite_part);
  if (std::abs(L.pole_coefficient) > cfg.pole_guard * scale)
    fail(errc::pole_at_zero, "zeta function has a pole at 0; determinant undefined");
  DetResult r;
  r.log_det = L.derivative_at_0;
  r.det = std::exp(r.log_det);
  r.angle_used = cut_.theta;
  r.partner_angle = cut_.theta;
  r.fit_discrepancy = L.fit_discrepancy;
  return r;
}

DetResult log_det_sym(const SpectralOperator& A, double theta, const ZetaConfig& cfg) {
  const double partner = theta - A.order() * cut::pi;
  const DetResult a = log_det(A, SpectralCut(theta), cfg);
  const DetResult b = log_det(A, SpectralCut(partner), cfg);
  DetResult r;
  r.log_det = 0.5 * (a.log_det + b.log_det);
  r.det = std::exp(r.log_det);
  r.angle_used = theta;
  r.partner_angle = partner;
  r.fit_discrepancy = std::max(a.fit_discrepancy, b.fit_discrepancy);
  return r;
}

cplx log_det_sym_shift(const SpectralOperator& base, const SpectralOperator& modified,
                       double theta) {
  if (base.index_set != modified.index_set || base.order() != modified.order())
    fail(errc::index_set_mismatch, "finite modification must preserve law shape");
  std::set<std::int64_t> idx;
  for (const auto& [n, e] : base.exceptions) idx.insert(n);
  for (const auto& [n, e] : modified.exceptions) idx.insert(n);
  cplx shift(0.0, 0.0);
  for (double th : {theta, theta - base.order() * cut::pi}) {
    const SpectralCut c(th);
    for (std::int64_t n : idx) {
      const auto [lo, mo] = base.eigenvalue(n);
      const auto [ln, mn] = modified.eigenvalue(n);
      shift += 0.5 * (static_cast<double>(mn) * cut::branch_log(ln, c) -
                      static_cast<double>(mo) * cut::branch_log(lo, c));
    }
  }
  return shift;
}

SquareCheck check_det_square(const SpectralOperator& A, double theta, double eps_det,
                             const ZetaConfig& cfg) {
  if (A.order() % 2 == 0) fail(errc::odd_order_required, "square identity needs odd order");
  const DetResult rhs_half = log_det_sym(A, theta, cfg);
  const DetResult lhs_full = log_det_sym(model::square_op(A), 2 * theta, cfg);
  SquareCheck c;
  c.lhs = lhs_full.det;
  c.rhs = rhs_half.det * rhs_half.det;
  c.pass = std::abs(c.lhs - c.rhs) < eps_det * std::abs(c.rhs);
  return c;
}

AngleCheck check_angle_dependence(const SpectralOperator& A, double theta1, double theta2,
                                  double eps_angle, const ZetaConfig& cfg) {
  if (theta2 < theta1) std::swap(theta1, theta2);
  if (!(theta2 - theta1 < cut::pi))
    fail(errc::hypothesis_violated, "angle pair must satisfy 0 <= theta2 - theta1 < pi");
  // the swept region Lam(theta1,theta2) u Lam(theta1-pi,theta2-pi) must hold
  // either finitely or cofinitely many eigenvalues; a ray at angle a lies in
  // the union iff a mod pi falls strictly inside (theta1, theta2) mod pi
  int tails_in = 0;
  for (int sign : {+1, -1}) {
    const model::BranchData b = A.branch(sign);
    const double dir = std::arg(b.leading);
    const bool in_union = arg_in_half_open(dir, theta1, theta2) ||
                          arg_in_half_open(dir, theta1 - cut::pi, theta2 - cut::pi);
    tails_in += in_union ? 1 : 0;
  }
  if (tails_in == 1)
    fail(errc::hypothesis_violated,
         "one spectral tail inside the swept angles and one outside");

  const DetResult d1 = log_det_sym(A, theta1, cfg);
  const DetResult d2 = log_det_sym(A, theta2, cfg);
  AngleCheck c;
  c.difference = d1.log_det - d2.log_det;
  const double res_im = dist_to_multiples(c.difference.imag(), cut::pi);
  c.residual = std::max(std::abs(c.difference.real()), res_im);
  c.multiple_of_i_pi = c.residual < eps_angle;
  return c;
}

SignCheck sign_symmetric(const SpectralOperator& A, double theta, const ZetaConfig& cfg) {
  if (!model::is_symmetric_spectrum(A))
    fail(errc::not_symmetric, "spectrum is not symmetric about the real axis");
  if (A.order() % 2 == 0) fail(errc::odd_order_required, "sign law needs odd order");
  for (const auto& t : A.law.terms) {
    if (t.pow != A.law.order) continue;
    if (t.c.imag() != 0.0 || t.sgn_exp != A.law.order % 2)
      fail(errc::hypothesis_violated, "leading behavior is not of real self-adjoint type");
  }
  if (!(theta > cut::pi / 2 && theta < cut::pi))
    fail(errc::hypothesis_violated, "theta must lie in (pi/2, pi)");
  // no eigenvalues in Lam(pi/2, theta] or Lam(-pi/2, theta - pi]
  std::int64_t n0 = 1;
  for (int sign : {+1, -1}) {
    const model::BranchData b = A.branch(sign);
    const double dir = std::arg(b.leading);
    const double margin =
        std::min({cut::ray_distance(dir, cut::pi / 2), cut::ray_distance(dir, theta),
                  cut::ray_distance(dir, -cut::pi / 2), cut::ray_distance(dir, theta - cut::pi)});
    if (margin <= 1e-9 || arg_in_half_open(dir, cut::pi / 2, theta) ||
        arg_in_half_open(dir, -cut::pi / 2, theta - cut::pi))
      fail(errc::hypothesis_violated, "spectral tail enters the excluded solid angles");
    n0 = std::max(n0, model::tail_settle(b, margin));
  }
  for (const auto& [n, e] : A.exceptions) n0 = std::max<std::int64_t>(n0, std::llabs(n) + 1);
  for (std::int64_t n = -n0 + 1; n < n0; ++n) {
    if (!A.contains(n)) continue;
    const double a = std::arg(A.eigenvalue(n).first);
    if (arg_in_half_open(a, cut::pi / 2, theta) ||
        arg_in_half_open(a, -cut::pi / 2, theta - cut::pi))
      fail(errc::hypothesis_violated,
           "eigenvalue inside the excluded solid angles at index " + std::to_string(n));
  }

  const auto [mp, mm] = model::count_imaginary_axis(A);
  (void)mm;
  const DetResult d = log_det_sym(A, theta, cfg);
  SignCheck c;
  c.m_plus = mp;
  c.predicted_sign = (mp % 2 == 0) ? +1 : -1;
  c.measured_sign = (d.det.real() >= 0.0) ? +1 : -1;
  c.imaginary_residual = dist_to_multiples(d.log_det.imag(), cut::pi);
  c.theorem_residual = dist_to_multiples(d.log_det.imag() + mp * cut::pi, cut::two_pi);
  c.log_det_sym_value = d.log_det;
  return c;
}

double product_angle(double theta_A, double theta_B) {
  if (theta_A > 0 && theta_A < cut::pi) return theta_B + theta_A;
  if (theta_A > cut::pi && theta_A < cut::two_pi) return theta_B - theta_A;
  fail(errc::config_error, "theta_A must lie in (0,pi) or (pi,2pi) for the product angle");
}

MultCheck multiplicativity_check(const SpectralOperator& A, const SpectralOperator& B,
                                 double theta_A, double theta_B, std::optional<double> theta_AB,
                                 double eps_mult, const ZetaConfig& cfg) {
  const double tab = theta_AB.value_or(product_angle(theta_A, theta_B));
  const SpectralOperator AB = model::multiply_commuting(A, B);
  const DetResult da = log_det_sym(A, theta_A, cfg);
  const DetResult db = log_det_sym(B, theta_B, cfg);
  const DetResult dab = log_det_sym(AB, tab, cfg);
  MultCheck c;
  c.ratio = std::exp(dab.log_det - da.log_det - db.log_det);
  c.theta_AB = tab;
  const double dplus = std::abs(c.ratio - cplx(1, 0));
  const double dminus = std::abs(c.ratio + cplx(1, 0));
  c.sign = (dplus <= dminus) ? +1 : -1;
  c.pass = std::min(dplus, dminus) < eps_mult;
  return c;
}

}  // namespace oddzeta::det
