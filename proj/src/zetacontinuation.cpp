#include "oddzeta/zetacontinuation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oddzeta::zeta {

namespace {

using model::BranchData;
using model::BranchTail;
using model::PolyInv;
using model::TailGroup;

constexpr std::int64_t kPlanCap = 20000;

cplx binom(cplx s, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= (s - cplx(i, 0.0)) / cplx(i + 1, 0.0);
  return r;
}


// Everything about one lattice branch that does not depend on s.
struct BranchPlan {
  int sign;
  cplx leading_log;            // branch_log of the law's leading value
  std::vector<PolyInv> u_pow;  // u^k, k = 0..K
  BranchTail wtail;            // weight tail groups on this branch
};

struct Plan {
  const ZetaFunction* Z;
  std::int64_t n0;  // middle radius: |n| < n0 handled directly
  BranchPlan br[2];
};

Plan build_plan(const ZetaFunction& Z) {
  model::check_agmon(Z.op, Z.cut);
  Z.weight.require_same_basis(Z.op);
  const int K = Z.cfg.expansion_depth;
  if (K < 1) fail(errc::config_error, "expansion depth must be >= 1");

  Plan p;
  p.Z = &Z;
  p.n0 = 1;
  for (int i = 0; i < 2; ++i) {
    const int sign = (i == 0) ? +1 : -1;
    BranchPlan& bp = p.br[i];
    bp.sign = sign;
    const BranchData b = Z.op.branch(sign);
    bp.leading_log = cut::branch_log(b.leading, Z.cut);
    const double gap = cut::ray_distance(std::arg(b.leading), Z.cut.theta);
    p.n0 = std::max(p.n0, model::tail_settle(b, gap / 2));
    bp.u_pow.resize(K + 1);
    bp.u_pow[0] = PolyInv{{0, cplx(1.0, 0.0)}};
    for (int k = 1; k <= K; ++k) bp.u_pow[k] = model::poly_mul(bp.u_pow[k - 1], b.u);
    bp.wtail = Z.weight.tail(sign, K);
    p.n0 = std::max(p.n0, bp.wtail.valid_from);
  }
  for (const auto& [n, e] : Z.op.exceptions) p.n0 = std::max<std::int64_t>(p.n0, std::llabs(n) + 1);
  for (std::int64_t n : Z.weight.special_indices()) p.n0 = std::max<std::int64_t>(p.n0, std::llabs(n) + 1);
  if (p.n0 > kPlanCap)
    fail(errc::not_agmon, "continuation plan needs an impractically wide direct region");
  return p;
}

// sum_{k>=n0} k^{-z} and sum_{k>=n0} k^{-z} ln k.
struct TailZeta {
  cplx plain;
  cplx logged;
};

TailZeta tail_zeta(cplx z, std::int64_t n0) {
  if (std::abs(z - cplx(1.0, 0.0)) < 1e-5)
    fail(errc::pole_hit, "continuation evaluated at a pole of the zeta kernel");
  const HurwitzResult h = hurwitz_zeta_pair(z, 1.0);
  cplx prefix(0.0, 0.0), prefix_log(0.0, 0.0);
  for (std::int64_t k = 1; k < n0; ++k) {
    const double lk = std::log(static_cast<double>(k));
    const cplx t = std::exp(-z * lk);
    prefix += t;
    prefix_log += lk * t;
  }
  return {h.value - prefix, -h.dz - prefix_log};
}

// One branch evaluated at s: closed-form groups plus the direct remainder.
cplx eval_branch(const Plan& p, const BranchPlan& bp, cplx s) {
  const ZetaFunction& Z = *p.Z;
  const int K = Z.cfg.expansion_depth;
  const double m = Z.op.order();
  const cplx front = std::exp(s * bp.leading_log);

  // Q-power expansion (1+u)^s at this s
  PolyInv qexp;
  for (int k = 0; k <= K; ++k) model::poly_axpy(qexp, binom(s, k), bp.u_pow[k]);

  struct GroupEval {
    cplx mu;
    PolyInv poly, poly_log;
  };
  std::vector<GroupEval> groups;
  cplx acc(0.0, 0.0);
  for (const TailGroup& g : bp.wtail.groups) {
    GroupEval ge;
    ge.mu = g.mu;
    ge.poly = model::poly_mul(g.poly, qexp);
    ge.poly_log = model::poly_mul(g.poly_log, qexp);
    for (const auto& [q, c] : ge.poly) {
      const TailZeta tz = tail_zeta(cplx(q, 0.0) - s * m - g.mu, p.n0);
      acc += front * c * tz.plain;
    }
    for (const auto& [q, c] : ge.poly_log) {
      const TailZeta tz = tail_zeta(cplx(q, 0.0) - s * m - g.mu, p.n0);
      acc += front * c * tz.logged;
    }
    groups.push_back(std::move(ge));
  }

  // direct remainder: exact law summand minus the closed-form approximation
  double scale = std::abs(acc) + 1.0;
  int small_streak = 0;
  for (std::int64_t k = p.n0; k <= Z.cfg.tail_cutoff; ++k) {
    const std::int64_t n = bp.sign > 0 ? k : -k;
    const double lk = std::log(static_cast<double>(k));
    const cplx t_true = Z.weight.law_value(n) *
                        cut::complex_power(Z.op.law_value(n), s, Z.cut);
    cplx t_cf(0.0, 0.0);
    for (const auto& ge : groups) {
      const cplx kpow = std::exp((s * m + ge.mu) * lk);
      cplx inner(0.0, 0.0);
      for (const auto& [q, c] : ge.poly) inner += c * std::exp(-q * lk);
      for (const auto& [q, c] : ge.poly_log) inner += c * lk * std::exp(-q * lk);
      t_cf += front * kpow * inner;
    }
    const cplx d = t_true - t_cf;
    acc += d;
    scale = std::max(scale, std::abs(acc) + 1.0);
    // stop once the correction is negligible or sits at the cancellation
    // noise floor of the two summands
    const double noise = 4e-15 * (std::abs(t_true) + std::abs(t_cf));
    if (std::abs(d) < 1e-17 * scale || std::abs(d) <= noise) {
      if (++small_streak >= 4) return acc;
    } else {
      small_streak = 0;
    }
    if (k == Z.cfg.tail_cutoff) {
      // conservative tail estimate: remaining sum bounded by |d| * k for the
      // super-linearly decaying remainder
      if (std::abs(d) * static_cast<double>(k) > Z.cfg.eps_cont)
        fail(errc::expansion_depth_insufficient,
             "remainder does not converge below eps_cont at the configured depth");
    }
  }
  return acc;
}

cplx eval_middle(const Plan& p, cplx s) {
  const ZetaFunction& Z = *p.Z;
  cplx acc(0.0, 0.0);
  for (std::int64_t n = -p.n0 + 1; n < p.n0; ++n) {
    if (!Z.op.contains(n)) continue;
    const auto [lam, mult] = Z.op.eigenvalue(n);
    acc += static_cast<double>(mult) * Z.weight.value(n) * cut::complex_power(lam, s, Z.cut);
  }
  return acc;
}

cplx eval_plan_raw(const Plan& p, cplx s) {
  return eval_branch(p, p.br[0], s) + eval_branch(p, p.br[1], s) + eval_middle(p, s);
}

// Kernel poles of individual branch terms frequently cancel between the two
// branches (the function itself is regular there).  When the raw evaluator
// hits one, take the limit by an 8-point circle mean and use the contour
// residue estimate to reject genuine poles.
cplx eval_plan(const Plan& p, cplx s) {
  try {
    return eval_plan_raw(p, s);
  } catch (const error& e) {
    if (e.code() != errc::pole_hit) throw;
  }
  const double delta = 0.01;
  const int npts = 8;
  cplx mean(0.0, 0.0), residue(0.0, 0.0);
  for (int j = 0; j < npts; ++j) {
    const cplx dir = std::polar(1.0, cut::two_pi * j / npts);
    const cplx f = eval_plan_raw(p, s + delta * dir);
    mean += f;
    residue += f * dir;
  }
  mean /= static_cast<double>(npts);
  residue *= delta / static_cast<double>(npts);
  if (std::abs(residue) > 1e-6)
    fail(errc::pole_hit, "continuation evaluated at a genuine pole, residue " +
                             std::to_string(std::abs(residue)));
  return mean;
}

}  // namespace

cplx zeta_direct(const ZetaFunction& Z, cplx s) {
  model::check_agmon(Z.op, Z.cut);
  Z.weight.require_same_basis(Z.op);
  const double deg = Z.weight.growth_degree();
  const double alpha = s.real() * Z.op.order() + deg;
  if (!(alpha < -1.0))
    fail(errc::not_convergent, "Re(s)*m + deg(weight) must be < -1 for direct summation");

  std::int64_t max_special = 1;
  for (const auto& [n, e] : Z.op.exceptions) max_special = std::max<std::int64_t>(max_special, std::llabs(n));
  for (std::int64_t n : Z.weight.special_indices()) max_special = std::max<std::int64_t>(max_special, std::llabs(n));

  cplx acc(0.0, 0.0);
  if (Z.op.contains(0)) {
    const auto [lam, mult] = Z.op.eigenvalue(0);
    acc += static_cast<double>(mult) * Z.weight.value(0) * cut::complex_power(lam, s, Z.cut);
  }
  const double eps = Z.cfg.eps_cont / 10.0;
  const std::int64_t cap = 4000000;
  for (std::int64_t k = 1; k <= cap; ++k) {
    double shell = 0.0;
    for (std::int64_t n : {k, -k}) {
      const auto [lam, mult] = Z.op.eigenvalue(n);
      const cplx t = static_cast<double>(mult) * Z.weight.value(n) *
                     cut::complex_power(lam, s, Z.cut);
      acc += t;
      shell += std::abs(t);
    }
    if (k > max_special && k >= 16) {
      // integral-comparison bound: sum_{j>k} j^alpha <= k^{alpha+1}/(-alpha-1)
      double est = shell * static_cast<double>(k) / (-alpha - 1.0);
      if (Z.weight.has_log_growth()) est *= 1.0 + std::log(static_cast<double>(k));
      if (est < eps) return acc;
    }
  }
  fail(errc::not_convergent, "direct sum did not reach the requested tolerance");
}

cplx continue_at(const ZetaFunction& Z, cplx s) {
  const Plan p = build_plan(Z);
  return eval_plan(p, s);
}

namespace {

struct CircleFit {
  cplx c[6];  // coefficients for powers -2..3
  cplx& at(int k) { return c[k + 2]; }
  const cplx& at(int k) const { return c[k + 2]; }
};

CircleFit fit_circle(const Plan& p, double r, int npts) {
  std::vector<cplx> f(npts);
  for (int j = 0; j < npts; ++j) {
    const double phi = cut::two_pi * j / npts;
    f[j] = eval_plan(p, std::polar(r, phi));
  }
  CircleFit fit;
  for (int k = -2; k <= 3; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < npts; ++j) {
      const double phi = cut::two_pi * j / npts;
      acc += f[j] * std::polar(1.0, -k * phi);
    }
    fit.at(k) = acc / (static_cast<double>(npts) * std::pow(r, k));
  }
  return fit;
}

}  // namespace

LaurentAt0 laurent_at_0(const ZetaFunction& Z) {
  const Plan p = build_plan(Z);
  const double r = Z.cfg.fit_radius;
  if (!(r > 0.0 && r < 0.5)) fail(errc::config_error, "fit radius must lie in (0, 0.5)");
  const CircleFit big = fit_circle(p, r, Z.cfg.fit_points);
  const CircleFit small = fit_circle(p, r / 2, Z.cfg.fit_points);

  double scale = 1.0;
  for (int k = -1; k <= 1; ++k) scale = std::max(scale, std::abs(big.at(k)));
  double disc = 0.0;
  for (int k = -1; k <= 1; ++k) disc = std::max(disc, std::abs(big.at(k) - small.at(k)));
  if (disc > Z.cfg.eps_laurent * scale)
    fail(errc::fit_unstable, "cross-radius Laurent fit disagreement " + std::to_string(disc));
  if (std::abs(small.at(-2)) > Z.cfg.pole_guard * scale)
    fail(errc::double_pole_detected, "Laurent fit shows a pole of order two at s = 0");

  LaurentAt0 out;
  out.pole_coefficient = big.at(-1);
  out.finite_part = big.at(0);
  out.derivative_at_0 = big.at(1);
  out.fit_discrepancy = disc;
  return out;
}

cplx weighted_trace(const EigenFamily& A, const SpectralOperator& Q, const SpectralCut& cut_,
                    const ZetaConfig& cfg) {
  ZetaFunction Z{Q, cut_, A, cfg};
  return laurent_at_0(Z).finite_part;
}

cplx tr_sym(const EigenFamily& A, const SpectralOperator& Q, double theta, const ZetaConfig& cfg) {
  const double partner = theta - Q.order() * cut::pi;
  const cplx a = weighted_trace(A, Q, SpectralCut(theta), cfg);
  const cplx b = weighted_trace(A, Q, SpectralCut(partner), cfg);
  return 0.5 * (a + b);
}

}  // namespace oddzeta::zeta
