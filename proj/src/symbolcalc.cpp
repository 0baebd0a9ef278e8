#include "oddzeta/symbolcalc.hpp"

#include <algorithm>
#include <cmath>

#include "oddzeta/errors.hpp"

namespace oddzeta::symb {

namespace {

constexpr double kIntTol = 1e-9;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

bool near_int(cplx z, int& out) {
  if (std::abs(z.imag()) > kIntTol) return false;
  const double r = std::round(z.real());
  if (std::abs(z.real() - r) > kIntTol) return false;
  out = static_cast<int>(r);
  return true;
}

// classical piece of d_xi^k sigma_A of degree (order - i - k), at the given
// sign of xi; empty when comp i is absent
FourierFn xi_piece(const Symbol& A, int k, int i, int sign) {
  if (i < 0 || i > A.depth()) return FourierFn();
  const cplx f = falling(A.degree_at(i), k);
  if (sign > 0) return A.comps[i].plus * f;
  const double par = (k % 2 == 0) ? 1.0 : -1.0;
  return A.comps[i].minus * (f * par);
}

// the log-part piece of d_xi^k (gamma log|xi|), degree -k, k >= 1:
// plus = (-1)^{k-1}(k-1)! gamma, minus = -(k-1)! gamma
cplx log_piece(cplx gamma, int k, int sign) {
  const double fk = factorial(k - 1);
  if (sign > 0) return gamma * fk * ((k % 2 == 1) ? 1.0 : -1.0);
  return -gamma * fk;
}

std::vector<std::vector<FourierFn>> dx_table(const Symbol& B, int kmax, int sign) {
  std::vector<std::vector<FourierFn>> t(B.depth() + 1);
  for (int l = 0; l <= B.depth(); ++l) {
    t[l].resize(kmax + 1);
    t[l][0] = (sign > 0) ? B.comps[l].plus : B.comps[l].minus;
    for (int k = 1; k <= kmax; ++k) t[l][k] = t[l][k - 1].dx();
  }
  return t;
}

}  // namespace

cplx falling(cplx h, int k) {
  cplx r(1.0, 0.0);
  for (int t = 0; t < k; ++t) r *= (h - cplx(t, 0));
  return r;
}

Symbol scale(const Symbol& A, cplx c) {
  Symbol r = A;
  r.gamma *= c;
  for (auto& comp : r.comps) {
    comp.plus = comp.plus * c;
    comp.minus = comp.minus * c;
  }
  return r;
}

Symbol add(const Symbol& A, const Symbol& B) {
  if (std::abs(A.order - B.order) > kIntTol)
    fail(errc::config_error, "symbol sum needs matching degrees");
  Symbol r;
  r.order = A.order;
  r.gamma = A.gamma + B.gamma;
  const int d = std::max(A.depth(), B.depth());
  r.comps.resize(d + 1);
  for (int j = 0; j <= d; ++j) {
    if (j <= A.depth()) {
      r.comps[j].plus = r.comps[j].plus + A.comps[j].plus;
      r.comps[j].minus = r.comps[j].minus + A.comps[j].minus;
    }
    if (j <= B.depth()) {
      r.comps[j].plus = r.comps[j].plus + B.comps[j].plus;
      r.comps[j].minus = r.comps[j].minus + B.comps[j].minus;
    }
  }
  return r;
}

Symbol sub(const Symbol& A, const Symbol& B) { return add(A, scale(B, cplx(-1, 0))); }

Symbol add_scalar(const Symbol& A, cplx c) {
  int j0;
  if (!near_int(A.order, j0) || j0 < 0 || j0 > A.depth())
    fail(errc::config_error, "no degree-0 component to add a scalar to");
  Symbol r = A;
  r.comps[j0].plus.set_coeff(0, r.comps[j0].plus.coeff(0) + c);
  r.comps[j0].minus.set_coeff(0, r.comps[j0].minus.coeff(0) + c);
  return r;
}

Symbol identity_symbol(int depth) {
  Symbol r;
  r.order = cplx(0, 0);
  r.comps.resize(depth + 1);
  r.comps[0].plus = FourierFn::constant(cplx(1, 0));
  r.comps[0].minus = FourierFn::constant(cplx(1, 0));
  return r;
}

Symbol compose(const Symbol& A, const Symbol& B, int J_out) {
  if (!A.is_classical() || !B.is_classical())
    fail(errc::log_composition_unsupported,
         "compose supports classical symbols; use commutator_symbol for log inputs");
  if (J_out > std::min(A.depth(), B.depth()))
    fail(errc::depth_insufficient, "inputs too shallow for the requested composition depth");
  Symbol r;
  r.order = A.order + B.order;
  r.comps.resize(J_out + 1);
  const auto dBp = dx_table(B, J_out, +1);
  const auto dBm = dx_table(B, J_out, -1);
  for (int j = 0; j <= J_out; ++j) {
    for (int k = 0; k <= j; ++k) {
      const double inv_kf = 1.0 / factorial(k);
      for (int i = 0; i + k <= j; ++i) {
        const int l = j - k - i;
        const FourierFn ap = xi_piece(A, k, i, +1);
        const FourierFn am = xi_piece(A, k, i, -1);
        if (ap.max_abs_coeff() > 0)
          r.comps[j].plus = r.comps[j].plus + ap.mul(dBp[l][k]) * inv_kf;
        if (am.max_abs_coeff() > 0)
          r.comps[j].minus = r.comps[j].minus + am.mul(dBm[l][k]) * inv_kf;
      }
    }
    r.comps[j].plus = r.comps[j].plus.trimmed();
    r.comps[j].minus = r.comps[j].minus.trimmed();
  }
  return r;
}

Symbol commutator_symbol(const Symbol& A, const Symbol& B, int J_out) {
  if (J_out > std::min(A.depth(), B.depth()))
    fail(errc::depth_insufficient, "inputs too shallow for the requested commutator depth");
  Symbol r;
  r.order = A.order + B.order - cplx(1, 0);
  r.comps.resize(J_out + 1);
  const auto dAp = dx_table(A, J_out + 1, +1);
  const auto dAm = dx_table(A, J_out + 1, -1);
  const auto dBp = dx_table(B, J_out + 1, +1);
  const auto dBm = dx_table(B, J_out + 1, -1);
  int a_int = -1, b_int = -1;
  if (A.gamma != cplx(0, 0) && !near_int(A.order, a_int))
    fail(errc::log_composition_unsupported, "log symbol of non-integer degree");
  if (B.gamma != cplx(0, 0) && !near_int(B.order, b_int))
    fail(errc::log_composition_unsupported, "log symbol of non-integer degree");

  for (int j = 0; j <= J_out; ++j) {
    // degree of the result component: ordA + ordB - 1 - j; contributions have
    // i + k + l = j + 1 with k >= 1
    for (int k = 1; k <= j + 1; ++k) {
      const double inv_kf = 1.0 / factorial(k);
      for (int i = 0; i + k <= j + 1; ++i) {
        const int l = j + 1 - k - i;
        // d_xi^k sigma_A * D_x^k sigma_B
        {
          FourierFn ap = xi_piece(A, k, i, +1);
          FourierFn am = xi_piece(A, k, i, -1);
          if (A.gamma != cplx(0, 0) && i == a_int) {
            ap.set_coeff(0, ap.coeff(0) + log_piece(A.gamma, k, +1));
            am.set_coeff(0, am.coeff(0) + log_piece(A.gamma, k, -1));
          }
          if (l <= B.depth()) {
            if (ap.max_abs_coeff() > 0)
              r.comps[j].plus = r.comps[j].plus + ap.mul(dBp[l][k]) * inv_kf;
            if (am.max_abs_coeff() > 0)
              r.comps[j].minus = r.comps[j].minus + am.mul(dBm[l][k]) * inv_kf;
          }
        }
        // minus d_xi^k sigma_B * D_x^k sigma_A
        {
          FourierFn bp = xi_piece(B, k, i, +1);
          FourierFn bm = xi_piece(B, k, i, -1);
          if (B.gamma != cplx(0, 0) && i == b_int) {
            bp.set_coeff(0, bp.coeff(0) + log_piece(B.gamma, k, +1));
            bm.set_coeff(0, bm.coeff(0) + log_piece(B.gamma, k, -1));
          }
          if (l <= A.depth()) {
            if (bp.max_abs_coeff() > 0)
              r.comps[j].plus = r.comps[j].plus - bp.mul(dAp[l][k]) * inv_kf;
            if (bm.max_abs_coeff() > 0)
              r.comps[j].minus = r.comps[j].minus - bm.mul(dAm[l][k]) * inv_kf;
          }
        }
      }
    }
  }
  return r;
}

double odd_class_deviation(const Symbol& A) {
  int m;
  if (!near_int(A.order, m)) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (int j = 0; j <= A.depth(); ++j) {
    const double par = ((m - j) % 2 == 0) ? 1.0 : -1.0;
    dev = std::max(dev, (A.comps[j].minus - A.comps[j].plus * par).max_abs_coeff());
  }
  return dev;
}

bool is_odd_class(const Symbol& A, double eps) { return odd_class_deviation(A) <= eps; }

double odd_pair_deviation(const Symbol& A, const Symbol& B) {
  if (std::abs(A.order - B.order) > kIntTol)
    fail(errc::config_error, "odd pair needs equal degrees");
  int m;
  if (!near_int(A.order, m)) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  const int d = std::min(A.depth(), B.depth());
  for (int j = 0; j <= d; ++j) {
    const double par = ((m - j) % 2 == 0) ? 1.0 : -1.0;
    dev = std::max(dev, (A.comps[j].minus - B.comps[j].plus * par).max_abs_coeff());
  }
  return dev;
}

bool is_odd_pair(const Symbol& A, const Symbol& B, double eps) {
  return odd_pair_deviation(A, B) <= eps;
}

cplx wodzicki_res(const Symbol& A) {
  int m;
  if (!near_int(A.order, m)) return cplx(0, 0);
  const int j = m + 1;  // degree order - j == -1
  if (j < 0 || j > A.depth()) return cplx(0, 0);
  return A.comps[j].plus.zeroth() + A.comps[j].minus.zeroth();
}

// --- rational-in-lambda helpers ----------------------------------------------

namespace {

void rl_add(RationalLambda& acc, const RationalLambda& o, cplx scale_factor) {
  for (const auto& [p, g] : o.terms) {
    auto it = acc.terms.find(p);
    if (it == acc.terms.end())
      acc.terms[p] = g * scale_factor;
    else
      it->second = it->second + g * scale_factor;
  }
}

RationalLambda rl_mulfn(const RationalLambda& r, const FourierFn& f) {
  RationalLambda out;
  for (const auto& [p, g] : r.terms) out.terms[p] = g.mul(f);
  return out;
}

RationalLambda rl_shift(const RationalLambda& r) {
  RationalLambda out;
  for (const auto& [p, g] : r.terms) out.terms[p + 1] = g;
  return out;
}

RationalLambda rl_dx(const RationalLambda& r, const FourierFn& dbeta) {
  RationalLambda out;
  for (const auto& [p, g] : r.terms) {
    rl_add(out, RationalLambda{{{p, g.dx()}}}, cplx(1, 0));
    rl_add(out, RationalLambda{{{p + 1, g.mul(dbeta)}}}, cplx(-static_cast<double>(p), 0));
  }
  return out;
}

}  // namespace

FourierFn eval_rational(const RationalLambda& r, const FourierFn& beta, cplx lambda,
                        int grid_size, int bandwidth) {
  const auto bg = beta.to_grid(grid_size);
  std::vector<cplx> vals(grid_size, cplx(0, 0));
  for (const auto& [p, g] : r.terms) {
    const auto gg = g.to_grid(grid_size);
    for (int x = 0; x < grid_size; ++x) {
      vals[x] += gg[x] / std::pow(bg[x] - lambda, p);
    }
  }
  return FourierFn::from_grid(vals, bandwidth);
}

ResolventSymbolFamily resolvent_symbols(const Symbol& A, int J, const SymbolConfig& cfg) {
  if (!A.is_classical()) fail(errc::not_scalar_supported, "resolvent of a log symbol");
  if (A.order.real() <= 0 || std::abs(A.order.imag()) > kIntTol)
    fail(errc::config_error, "resolvent needs positive real order");
  if (J > A.depth())
    fail(errc::depth_insufficient, "symbol too shallow for the requested resolvent depth");

  ResolventSymbolFamily fam;
  fam.depth = J;
  const int grid = 4 * cfg.bandwidth + 1;
  for (int si = 0; si < 2; ++si) {
    const int sign = (si == 0) ? +1 : -1;
    const FourierFn beta = (sign > 0) ? A.comps[0].plus : A.comps[0].minus;
    for (const cplx& v : beta.to_grid(grid))
      if (std::abs(v) < 1e-12)
        fail(errc::not_elliptic, "principal symbol vanishes on the circle");
    fam.beta[si] = beta;
    const FourierFn dbeta = beta.dx();

    auto& r = fam.comp[si];
    r.resize(J + 1);
    r[0].terms[1] = FourierFn::constant(cplx(1, 0));
    // working bandwidth cap: products are truncated at twice the configured
    // bandwidth (the declared truncation, checked by doubling-stability)
    const int cap = 2 * cfg.bandwidth;
    for (int j = 1; j <= J; ++j) {
      RationalLambda acc;
      for (int k = 0; k <= j; ++k) {
        const double inv_kf = 1.0 / factorial(k);
        for (int i = 0; i + k <= j; ++i) {
          const int l = j - k - i;
          if (l >= j) continue;  // the defining term stays on the left side
          const FourierFn piece = xi_piece(A, k, i, sign);
          if (piece.max_abs_coeff() == 0) continue;
          RationalLambda term = r[l];
          for (int kk = 0; kk < k; ++kk) term = rl_dx(term, dbeta);
          rl_add(acc, rl_mulfn(term, piece), cplx(inv_kf, 0));
        }
      }
      r[j] = rl_shift(acc);
      for (auto& [p, g] : r[j].terms) g = (g * cplx(-1, 0)).capped(cap).trimmed();
    }
  }
  return fam;
}

namespace {

int output_bandwidth(const ResolventSymbolFamily& fam, const SymbolConfig& cfg) {
  int bw = cfg.bandwidth;
  for (int si = 0; si < 2; ++si)
    for (const auto& rl : fam.comp[si])
      for (const auto& [p, g] : rl.terms) bw = std::max(bw, g.bandwidth());
  return std::min(bw, 2 * cfg.bandwidth);
}

}  // namespace

Symbol power_symbol(const Symbol& A, cplx s, const SpectralCut& cut_, int J,
                    const SymbolConfig& cfg) {
  const ResolventSymbolFamily fam = resolvent_symbols(A, J, cfg);
  const int bw = output_bandwidth(fam, cfg);
  const int grid = 4 * bw + 1;

  Symbol out;
  out.order = s * A.order;
  out.comps.resize(J + 1);
  for (int si = 0; si < 2; ++si) {
    const int sign = (si == 0) ? +1 : -1;
    const auto bg = fam.beta[si].to_grid(grid);
    for (const cplx& v : bg) {
      if (std::abs(v) < 1e-12) fail(errc::not_elliptic, "principal symbol vanishes");
      if (cut::ray_distance(std::arg(v), cut_.theta) <= 1e-9)
        fail(errc::not_principal, "principal symbol value on the cut ray");
    }
    for (int j = 0; j <= J; ++j) {
      std::vector<cplx> vals(grid, cplx(0, 0));
      for (const auto& [p, g] : fam.comp[si][j].terms) {
        const cplx wp = ((p % 2 == 0) ? -1.0 : 1.0) * falling(s, p - 1) / factorial(p - 1);
        if (wp == cplx(0, 0)) continue;
        const auto gg = g.to_grid(grid);
        for (int x = 0; x < grid; ++x)
          vals[x] += gg[x] * wp * cut::complex_power(bg[x], s - cplx(p - 1, 0), cut_);
      }
      FourierFn comp = FourierFn::from_grid(vals, bw).trimmed();
      if (sign > 0)
        out.comps[j].plus = comp;
      else
        out.comps[j].minus = comp;
    }
  }

  // calibration anchors: s = 1 reproduces A, s = 0 the identity
  if (s == cplx(1, 0)) {
    for (int j = 0; j <= J; ++j) {
      const double dev = std::max((out.comps[j].plus - A.comps[j].plus).max_abs_coeff(),
                                  (out.comps[j].minus - A.comps[j].minus).max_abs_coeff());
      if (dev > 1e-7)
        fail(errc::config_error, "power symbol calibration failed at s = 1");
    }
  }
  if (s == cplx(0, 0)) {
    const Symbol id = identity_symbol(J);
    for (int j = 0; j <= J; ++j) {
      const double dev = std::max((out.comps[j].plus - id.comps[j].plus).max_abs_coeff(),
                                  (out.comps[j].minus - id.comps[j].minus).max_abs_coeff());
      if (dev > 1e-7)
        fail(errc::config_error, "power symbol calibration failed at s = 0");
    }
  }
  return out;
}

Symbol log_symbol(const Symbol& A, const SpectralCut& cut_, int J, const SymbolConfig& cfg) {
  const double h = cfg.fd_step;
  const Symbol p1 = power_symbol(A, cplx(h, 0), cut_, J, cfg);
  const Symbol m1 = power_symbol(A, cplx(-h, 0), cut_, J, cfg);
  const Symbol p2 = power_symbol(A, cplx(h / 2, 0), cut_, J, cfg);
  const Symbol m2 = power_symbol(A, cplx(-h / 2, 0), cut_, J, cfg);

  Symbol out;
  out.order = cplx(0, 0);
  out.gamma = A.order;
  out.comps.resize(J + 1);
  for (int j = 0; j <= J; ++j) {
    const FourierFn d1p = (p1.comps[j].plus - m1.comps[j].plus) * cplx(1.0 / (2 * h), 0);
    const FourierFn d1m = (p1.comps[j].minus - m1.comps[j].minus) * cplx(1.0 / (2 * h), 0);
    const FourierFn d2p = (p2.comps[j].plus - m2.comps[j].plus) * cplx(1.0 / h, 0);
    const FourierFn d2m = (p2.comps[j].minus - m2.comps[j].minus) * cplx(1.0 / h, 0);
    out.comps[j].plus = (d2p * cplx(4.0 / 3.0, 0)) - (d1p * cplx(1.0 / 3.0, 0));
    out.comps[j].minus = (d2m * cplx(4.0 / 3.0, 0)) - (d1m * cplx(1.0 / 3.0, 0));
  }
  return out;
}

double check_asodd(const Symbol& A, const SpectralCut& cut_, cplx s, int J,
                   const SymbolConfig& cfg) {
  int m;
  if (!near_int(A.order, m)) fail(errc::config_error, "odd-class check needs integer order");
  const Symbol P1 = power_symbol(A, s, cut_, J, cfg);
  const Symbol P2 = power_symbol(A, s, SpectralCut(cut_.theta - m * cut::pi), J, cfg);
  const cplx phase = std::exp(cplx(0, 1) * static_cast<double>(m) * s * cut::pi);
  double dev = 0.0;
  for (int j = 0; j <= J; ++j) {
    const double par = (j % 2 == 0) ? 1.0 : -1.0;
    dev = std::max(dev, (P1.comps[j].minus - P2.comps[j].plus * (phase * par)).max_abs_coeff());
  }
  return dev;
}

cplx anomaly_integrand(const Symbol& A, const Symbol& B, double theta_A, double alpha_t,
                       double beta_t, double t, int J, const SymbolConfig& cfg) {
  const double mA = A.order.real();
  const Symbol lA1 = log_symbol(A, SpectralCut(theta_A), J, cfg);
  const Symbol lA2 = log_symbol(A, SpectralCut(theta_A - mA * cut::pi), J, cfg);

  const Symbol At1 = power_symbol(A, cplx(t, 0), SpectralCut(theta_A), J, cfg);
  const Symbol C1 = compose(At1, B, J);
  const Symbol lC1 = log_symbol(C1, SpectralCut(alpha_t), J, cfg);

  const Symbol At2 = power_symbol(A, cplx(t, 0), SpectralCut(theta_A - mA * cut::pi), J, cfg);
  const Symbol C2 = compose(At2, B, J);
  const Symbol lC2 = log_symbol(C2, SpectralCut(beta_t), J, cfg);

  const cplx mu = C1.order;
  Symbol U = sub(scale(lC1, cplx(1, 0) / mu), scale(lA1, cplx(1, 0) / cplx(mA, 0)));
  Symbol V = sub(scale(lC2, cplx(1, 0) / mu), scale(lA2, cplx(1, 0) / cplx(mA, 0)));
  if (std::abs(U.gamma) > 1e-10 || std::abs(V.gamma) > 1e-10)
    fail(errc::log_composition_unsupported, "anomaly operands did not come out classical");
  U.gamma = cplx(0, 0);
  V.gamma = cplx(0, 0);
  return wodzicki_res(add(compose(U, U, J), compose(V, V, J)));
}

cplx residue_coboundary(const Symbol& Q, const SpectralCut& cut_, const Symbol& A,
                        const Symbol& B, int J, const SymbolConfig& cfg) {
  if (Q.order.real() < 1) fail(errc::config_error, "weight symbol must have order >= 1");
  const Symbol lq = log_symbol(Q, cut_, J, cfg);
  const Symbol K = commutator_symbol(lq, A, J);
  const Symbol R = compose(K, B, J);
  return -wodzicki_res(R) / Q.order.real();
}

}  // namespace oddzeta::symb
