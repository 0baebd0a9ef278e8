#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "oddzeta/fixtures.hpp"
#include "oddzeta/symbolcalc.hpp"

using namespace oddzeta;
using namespace oddzeta::symb;
using oddzeta::cut::pi;
using oddzeta::cut::SpectralCut;
using cplx = std::complex<double>;

namespace {

// Fourier-mode oracle for differential symbols: the matrix of Op(sigma) on
// modes e^{ikx}, |k| <= M.  Column k, row k + t.
using Mat = std::vector<std::vector<cplx>>;

Mat op_matrix(const Symbol& S, int M) {
  const int n = 2 * M + 1;
  Mat T(n, std::vector<cplx>(n, cplx(0, 0)));
  const int m = static_cast<int>(std::lround(S.order.real()));
  for (int k = -M; k <= M; ++k) {
    for (int j = 0; j <= S.depth() && j <= m; ++j) {
      const int d = m - j;
      double kp;
      if (k == 0)
        kp = (d == 0) ? 1.0 : 0.0;
      else
        kp = std::pow(std::abs(static_cast<double>(k)), d);
      const FourierFn& f = (k >= 0) ? S.comps[j].plus : S.comps[j].minus;
      for (int t = -f.bandwidth(); t <= f.bandwidth(); ++t) {
        const int row = k + t;
        if (row < -M || row > M) continue;
        T[row + M][k + M] += f.coeff(t) * kp;
      }
    }
  }
  return T;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  const int n = static_cast<int>(A.size());
  Mat C(n, std::vector<cplx>(n, cplx(0, 0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (A[i][k] == cplx(0, 0)) continue;
      for (int j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

FourierFn cosx() { return FourierFn::from_modes({{1, cplx(0.5, 0)}, {-1, cplx(0.5, 0)}}); }

}  // namespace

TEST_CASE("compose: constant coefficients multiply pointwise") {
  const int J = 4;
  const Symbol A = fix::const_symbol_order1(cplx(0.7, 0), J);
  const Symbol B = fix::const_symbol_order1(cplx(-0.7, 0), J);
  const Symbol C = compose(A, B, J);  // (xi + c)(xi - c) = xi^2 - c^2
  CHECK(C.order == cplx(2, 0));
  CHECK(std::abs(C.comps[0].plus.zeroth() - cplx(1, 0)) < 1e-14);
  CHECK(C.comps[1].plus.max_abs_coeff() < 1e-14);
  CHECK(std::abs(C.comps[2].plus.zeroth() - cplx(-0.49, 0)) < 1e-14);
  CHECK(std::abs(C.comps[2].minus.zeroth() - cplx(-0.49, 0)) < 1e-14);
}

TEST_CASE("compose: xi with a multiplier gives f xi - i f'") {
  const int J = 3;
  const Symbol Xi = fix::differential_symbol(
      {FourierFn::constant(cplx(0, 0)), FourierFn::constant(cplx(1, 0))}, J);
  const Symbol F = fix::differential_symbol({cosx()}, J);
  const Symbol C = compose(Xi, F, J);
  // degree 1: cos(x); degree 0: -i * d/dx cos(x) = D_x cos(x)
  CHECK((C.comps[0].plus - cosx()).max_abs_coeff() < 1e-14);
  CHECK((C.comps[1].plus - cosx().dx()).max_abs_coeff() < 1e-14);
  // identity composes trivially
  const Symbol Id = identity_symbol(J);
  const Symbol CB = compose(Id, F, J);
  CHECK((CB.comps[0].plus - cosx()).max_abs_coeff() < 1e-14);
}

TEST_CASE("compose matches the Fourier-mode operator oracle") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 5, M = 24;
  for (int trial = 0; trial < 4; ++trial) {
    const Symbol A = fix::differential_symbol(
        {fix::random_fn(rng, 3, 0.8), fix::random_fn(rng, 3, 0.8)}, J);
    const Symbol B = fix::differential_symbol(
        {fix::random_fn(rng, 3, 0.8), fix::random_fn(rng, 3, 0.8), fix::random_fn(rng, 3, 0.8)},
        J);
    const Symbol C = compose(A, B, J);
    const Mat lhs = op_matrix(C, M);
    const Mat rhs = mat_mul(op_matrix(A, M), op_matrix(B, M));
    // compare away from the truncation edge
    const int inner = M - 8;
    double dev = 0.0;
    for (int r = -inner; r <= inner; ++r)
      for (int c = -inner; c <= inner; ++c)
        dev = std::max(dev, std::abs(lhs[r + M][c + M] - rhs[r + M][c + M]));
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("commutator basics") {
  const int J = 4;
  const Symbol Xi = fix::differential_symbol(
      {FourierFn::constant(cplx(0, 0)), FourierFn::constant(cplx(1, 0))}, J);
  const Symbol F = fix::differential_symbol({cosx()}, J);
  const Symbol C = commutator_symbol(Xi, F, J);
  // [xi, f] = -i f' = D_x f, landing at degree 0 = order(1+0-1) - 0
  CHECK((C.comps[0].plus - cosx().dx()).max_abs_coeff() < 1e-13);
  CHECK((C.comps[0].minus - cosx().dx()).max_abs_coeff() < 1e-13);

  std::mt19937_64 rng(7);
  const Symbol A = fix::random_symbol(rng, 2, 4, J);
  const Symbol Z = commutator_symbol(A, A, J);
  for (int j = 0; j <= J; ++j) {
    CHECK(Z.comps[j].plus.max_abs_coeff() < 1e-12);
    CHECK(Z.comps[j].minus.max_abs_coeff() < 1e-12);
  }
}

TEST_CASE("commutator of a log symbol with a multiplier is classical") {
  const int J = 4;
  Symbol L = identity_symbol(J);  // stand-in log symbol: gamma + lower comps
  L.gamma = cplx(1, 0);
  L.comps[0].plus = FourierFn::constant(cplx(0, 0));
  L.comps[0].minus = FourierFn::constant(cplx(0, -pi));
  const Symbol G = fix::differential_symbol({cosx()}, J);
  const Symbol C = commutator_symbol(L, G, J);
  CHECK(C.is_classical());
  // leading term gamma * D_x g at degree -1 (offset 0 of order -1)
  CHECK((C.comps[0].plus - cosx().dx()).max_abs_coeff() < 1e-13);
  CHECK((C.comps[0].minus - cosx().dx() * cplx(-1, 0)).max_abs_coeff() < 1e-13);
}

TEST_CASE("odd class predicate") {
  const int J = 4;
  CHECK(is_odd_class(fix::const_symbol_order1(cplx(0.3, 0.1), J)));
  // |xi|: plus = minus = 1 at degree 1
  Symbol absxi;
  absxi.order = cplx(1, 0);
  absxi.comps.resize(J + 1);
  absxi.comps[0].plus = FourierFn::constant(cplx(1, 0));
  absxi.comps[0].minus = FourierFn::constant(cplx(1, 0));
  CHECK_FALSE(is_odd_class(absxi));
  // generic differential operator
  std::mt19937_64 rng(11);
  const Symbol D = fix::differential_symbol(
      {fix::random_fn(rng, 4, 1.0), fix::random_fn(rng, 4, 1.0), fix::random_fn(rng, 4, 1.0)}, J);
  CHECK(is_odd_class(D));
}

TEST_CASE("odd pair predicate and composition closure") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 5;
  // (A, A) odd for odd-class A
  const Symbol A = fix::random_odd_symbol(rng, 1, 4, J);
  CHECK(is_odd_pair(A, A));
  // (xi, -xi) is not an odd pair
  const Symbol Xi = fix::const_symbol_order1(cplx(0, 0), J);
  CHECK_FALSE(is_odd_pair(Xi, scale(Xi, cplx(-1, 0))));

  // closure: (A1 A2, B1 B2) odd for odd pairs (A1,B1), (A2,B2)
  for (int trial = 0; trial < 6; ++trial) {
    const Symbol A1 = fix::random_symbol(rng, 1, 3, J);
    const Symbol A2 = fix::random_symbol(rng, 2, 3, J);
    const Symbol B1 = fix::odd_partner(A1);
    const Symbol B2 = fix::odd_partner(A2);
    CHECK(is_odd_pair(A1, B1));
    const double dev =
        odd_pair_deviation(compose(A1, A2, J - 1), compose(B1, B2, J - 1));
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("wodzicki residue") {
  const int J = 3;
  // symbol with sigma_{-1} plus = minus = 1 has residue 2
  Symbol S;
  S.order = cplx(-1, 0);
  S.comps.resize(J + 1);
  S.comps[0].plus = FourierFn::constant(cplx(1, 0));
  S.comps[0].minus = FourierFn::constant(cplx(1, 0));
  CHECK(std::abs(wodzicki_res(S) - cplx(2, 0)) < 1e-15);

  // odd-class symbols have vanishing residue
  std::mt19937_64 rng(23);
  for (int order : {1, 2}) {
    const Symbol A = fix::random_odd_symbol(rng, order, 4, order + 3);
    CHECK(std::abs(wodzicki_res(A)) < 1e-12);
  }
  // no degree -1 component: residue 0
  CHECK(wodzicki_res(fix::const_symbol_order1(cplx(1, 0), 1)) == cplx(0, 0));

  // the residue vanishes on commutators
  for (int trial = 0; trial < 4; ++trial) {
    const Symbol A = fix::random_symbol(rng, 1, 3, 6);
    const Symbol B = fix::random_symbol(rng, 2, 3, 6);
    CHECK(std::abs(wodzicki_res(commutator_symbol(A, B, 5))) < 1e-11);
  }
}

TEST_CASE("resolvent symbols: constant coefficients and the odd identity") {
  const int J = 4;
  SUBCASE("xi + c terminates at the double pole chain") {
    const Symbol A = fix::const_symbol_order1(cplx(0.4, 0), J);
    const ResolventSymbolFamily fam = resolvent_symbols(A, J);
    // r_{-1} = (beta - lambda)^{-1}
    CHECK(fam.comp[0][0].terms.size() == 1);
    CHECK(std::abs(fam.comp[0][0].terms.at(1).zeroth() - cplx(1, 0)) < 1e-14);
    // r_{-2} = -c (beta - lambda)^{-2} on both sides
    CHECK(std::abs(fam.comp[0][1].terms.at(2).zeroth() - cplx(-0.4, 0)) < 1e-14);
    CHECK(std::abs(fam.comp[1][1].terms.at(2).zeroth() - cplx(-0.4, 0)) < 1e-14);
  }
  SUBCASE("rodd: r_{-m-j}(x,-1;(-1)^m lambda) = (-1)^{m+j} r_{-m-j}(x,1;lambda)") {
    std::mt19937_64 rng(fix::default_seed());
    for (int m : {1, 2}) {
      const Symbol A = fix::random_odd_symbol(rng, m, 4, J + m);
      const ResolventSymbolFamily fam = resolvent_symbols(A, J);
      const double sgn_m = (m % 2 == 0) ? 1.0 : -1.0;
      for (cplx lam : {cplx(0.3, 2.0), cplx(-1.5, 0.7), cplx(4.0, -3.0)}) {
        for (int j = 0; j <= J; ++j) {
          const double par = ((m + j) % 2 == 0) ? 1.0 : -1.0;
          const FourierFn lhs = eval_rational(fam.comp[1][j], fam.beta[1], sgn_m * lam, 129, 32);
          const FourierFn rhs = eval_rational(fam.comp[0][j], fam.beta[0], lam, 129, 32) * par;
          CHECK((lhs - rhs).max_abs_coeff() < 1e-10);
        }
      }
    }
  }
  SUBCASE("parametrix identity at sampled lambda") {
    std::mt19937_64 rng(99);
    const Symbol A = fix::random_odd_symbol(rng, 1, 3, J);
    const ResolventSymbolFamily fam = resolvent_symbols(A, J);
    for (int si = 0; si < 2; ++si) {
      const int sign = si == 0 ? +1 : -1;
      const cplx lam(0.2, 3.0);  // off the spectrum of the leading values
      // sum_{k+i+l=j} (1/k!) d_xi^k sigma_{m-i} D_x^k r_{-m-l} = delta_j0 + lambda r_{-m-j}
      for (int j = 0; j <= J; ++j) {
        FourierFn acc;
        for (int k = 0; k <= j; ++k) {
          double kf = 1.0;
          for (int t = 2; t <= k; ++t) kf *= t;
          for (int i = 0; i + k <= j; ++i) {
            const int l = j - k - i;
            const cplx f = falling(A.degree_at(i), k) * (1.0 / kf);
            FourierFn piece = (sign > 0) ? A.comps[i].plus : A.comps[i].minus;
            if (sign < 0 && k % 2 == 1) piece = piece * cplx(-1, 0);
            FourierFn rl = eval_rational(fam.comp[si][l], fam.beta[si], lam, 129, 40);
            for (int t = 0; t < k; ++t) rl = rl.dx();
            acc = acc + piece.mul(rl) * f;
          }
        }
        FourierFn want = eval_rational(fam.comp[si][j], fam.beta[si], lam, 129, 40) * lam;
        if (j == 0) want.set_coeff(0, want.coeff(0) + cplx(1, 0));
        CHECK((acc - want).max_abs_coeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("power symbol closed forms") {
  const int J = 4;
  SUBCASE("sigma = xi at theta = pi/2") {
    const Symbol Xi = fix::const_symbol_order1(cplx(0, 0), J);
    const cplx s(0.37, -0.8);
    const Symbol P = power_symbol(Xi, s, SpectralCut(pi / 2), J);
    CHECK(std::abs(P.comps[0].plus.zeroth() - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(P.comps[0].minus.zeroth() - std::exp(cplx(0, -pi) * s)) < 1e-12);
    for (int j = 1; j <= J; ++j) {
      CHECK(P.comps[j].plus.max_abs_coeff() < 1e-12);
      CHECK(P.comps[j].minus.max_abs_coeff() < 1e-12);
    }
  }
  SUBCASE("sigma = xi + c: binomial components on both sides") {
    const double c = 0.35;
    const Symbol A = fix::const_symbol_order1(cplx(c, 0), J);
    const cplx s(0.6, 0.4);
    const SpectralCut th(pi / 2);
    const Symbol P = power_symbol(A, s, th, J);
    for (int j = 0; j <= J; ++j) {
      cplx bin = falling(s, j);
      for (int t = 2; t <= j; ++t) bin /= t;
      // xi + c = -|xi|(1 - c/|xi|) for xi < 0, so the minus side carries the
      // branch factor (-1)^s_theta and binomials in -c
      const cplx wantp = bin * std::pow(c, j);  // (+1)^{s-j} = 1
      const cplx wantm = bin * std::pow(-c, j) * cut::complex_power(cplx(-1, 0), s, th);
      CHECK(std::abs(P.comps[j].plus.zeroth() - wantp) < 1e-11);
      CHECK(std::abs(P.comps[j].minus.zeroth() - wantm) < 1e-11);
    }
  }
  SUBCASE("sigma = xi^2 + a^2: even components only") {
    const double a2 = 0.49;
    const Symbol A = fix::const_symbol_order2(cplx(0, 0), cplx(a2, 0), J);
    const cplx s(0.31, 0.2);
    const Symbol P = power_symbol(A, s, SpectralCut(pi), J);
    for (int j = 0; j <= J; ++j) {
      if (j % 2 == 1) {
        CHECK(P.comps[j].plus.max_abs_coeff() < 1e-11);
        continue;
      }
      const int k = j / 2;
      cplx bin = falling(s, k);
      for (int t = 2; t <= k; ++t) bin /= t;
      const cplx want = bin * std::pow(a2, k);
      CHECK(std::abs(P.comps[j].plus.zeroth() - want) < 1e-11);
      CHECK(std::abs(P.comps[j].minus.zeroth() - want) < 1e-11);
    }
  }
  SUBCASE("calibration anchors run for variable coefficients") {
    std::mt19937_64 rng(fix::default_seed());
    const Symbol A = fix::random_odd_symbol(rng, 1, 3, J);
    CHECK_NOTHROW(power_symbol(A, cplx(1, 0), SpectralCut(pi / 2), J));
    CHECK_NOTHROW(power_symbol(A, cplx(0, 0), SpectralCut(pi / 2), J));
    // cut through the leading values is rejected
    CHECK_THROWS_AS(power_symbol(A, cplx(0.5, 0), SpectralCut(0.0), J), oddzeta::error);
  }
}

TEST_CASE("log symbol closed forms") {
  const int J = 4;
  SUBCASE("sigma = xi at two cuts; branch shift visible in sigma_0") {
    const Symbol Xi = fix::const_symbol_order1(cplx(0, 0), J);
    const Symbol L1 = log_symbol(Xi, SpectralCut(pi / 2), J);
    CHECK(L1.gamma == cplx(1, 0));
    CHECK(std::abs(L1.comps[0].plus.zeroth()) < 1e-10);
    CHECK(std::abs(L1.comps[0].minus.zeroth() - cplx(0, -pi)) < 1e-10);
    const Symbol L2 = log_symbol(Xi, SpectralCut(-pi / 2), J);
    CHECK(std::abs(L2.comps[0].plus.zeroth() - cplx(0, -2 * pi)) < 1e-10);
    CHECK(std::abs(L2.comps[0].minus.zeroth() - cplx(0, -pi)) < 1e-10);
  }
  SUBCASE("sigma = xi^2 + a^2 at theta = pi: component ladder of log(1+a^2)") {
    const double a2 = 0.49;
    const Symbol A = fix::const_symbol_order2(cplx(0, 0), cplx(a2, 0), 6);
    const Symbol L = log_symbol(A, SpectralCut(pi), 6);
    CHECK(std::abs(L.gamma - cplx(2, 0)) < 1e-14);
    cplx resummed(0, 0);
    for (int j = 0; j <= 6; ++j) {
      resummed += L.comps[j].plus.zeroth();
      if (j % 2 == 1) {
        CHECK(L.comps[j].plus.max_abs_coeff() < 1e-9);
      } else if (j > 0) {
        const int k = j / 2;
        const double want = ((k % 2 == 1) ? 1.0 : -1.0) * std::pow(a2, k) / k;
        CHECK(std::abs(L.comps[j].plus.zeroth() - cplx(want, 0)) < 1e-9);
      }
    }
    // truncated evaluation at xi = +-1 approaches log(1 + a^2)
    CHECK(std::abs(resummed - std::log(1.0 + a2)) < 0.05);
  }
}

TEST_CASE("powers of odd-class symbols: the two-cut component identity") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 4;
  const Symbol Xi = fix::const_symbol_order1(cplx(0, 0), J);
  CHECK(check_asodd(Xi, SpectralCut(pi / 2), cplx(0.7, 0.3), J) < 1e-10);
  const Symbol L = fix::const_symbol_order2(cplx(0, 0), cplx(0.49, 0), J);
  CHECK(check_asodd(L, SpectralCut(pi), cplx(0.5, 0), J) < 1e-8);
  CHECK(check_asodd(L, SpectralCut(pi), cplx(0, 0), J) < 1e-12);
  for (int m : {1, 2}) {
    const Symbol A = fix::random_odd_symbol(rng, m, 3, J);
    CHECK(check_asodd(A, SpectralCut(fix::odd_symbol_cut(m)), cplx(0.4, -0.2), J) < 1e-8);
  }
}

TEST_CASE("log pairs: odd pair across cuts and odd-class sum") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 4;
  for (int m : {1, 2}) {
    const Symbol A = fix::random_odd_symbol(rng, m, 3, J);
    const double th = fix::odd_symbol_cut(m);
    const Symbol l1 = log_symbol(A, SpectralCut(th), J);
    const Symbol l2 = log_symbol(A, SpectralCut(th - m * pi), J);
    // (log_theta A, i m pi + log_{theta - m pi} A) is an odd pair
    const Symbol shifted = add_scalar(l2, cplx(0, m * pi));
    CHECK(odd_pair_deviation(l1, shifted) < 1e-9);
    // log_theta A + log_{theta - m pi} A is odd class of type 2m
    const Symbol sum = add(l1, l2);
    CHECK(std::abs(sum.gamma - cplx(2 * m, 0)) < 1e-12);
    CHECK(odd_class_deviation(sum) < 1e-9);
    if (m % 2 == 0) CHECK(odd_class_deviation(l1) < 1e-9);
  }
}

TEST_CASE("residue of normalized log differences vanishes for odd-class pairs") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 5;
  const Symbol A1 = fix::random_odd_symbol(rng, 1, 3, J);
  const Symbol A2 = fix::random_odd_symbol(rng, 2, 3, J);
  for (double t1 : {pi / 2, 3 * pi / 4}) {
    for (double t2 : {pi, 3 * pi / 2}) {
      const Symbol l1 = log_symbol(A1, SpectralCut(t1), J);
      const Symbol l2 = log_symbol(A2, SpectralCut(t2), J);
      Symbol D = sub(l1, scale(l2, cplx(0.5, 0)));
      CHECK(std::abs(D.gamma) < 1e-12);
      CHECK(std::abs(wodzicki_res(D)) < 1e-9);
    }
  }
}

TEST_CASE("residue coboundary: single-cut value, symmetrized vanishing") {
  std::mt19937_64 rng(fix::default_seed());
  const int J = 6;
  const Symbol F = fix::differential_symbol({cosx()}, J);
  std::vector<FourierFn> gx = {FourierFn::constant(cplx(0, 0)), fix::random_fn(rng, 2, 1.0)};
  const Symbol G = fix::differential_symbol(gx, J);

  // constant-coefficient A, B commute with log Q exactly
  const Symbol Qc = fix::const_symbol_order1(cplx(0, 0), J);  // xi
  const Symbol Ac = fix::const_symbol_order1(cplx(0.3, 0), J);
  const Symbol Bc = fix::const_symbol_order2(cplx(0.1, 0), cplx(0.2, 0), J);
  CHECK(std::abs(residue_coboundary(Qc, SpectralCut(pi / 2), Ac, Bc, J)) < 1e-10);

  // Q = xi: log Q has constant components, the commutator stays odd class and
  // even a single cut gives zero
  CHECK(std::abs(residue_coboundary(Qc, SpectralCut(pi / 2), F, G, J)) < 1e-9);

  // variable-coefficient Q, odd-class A, B: the symmetrized value vanishes
  const Symbol Q = fix::differential_symbol(
      {cosx() * cplx(0.3, 0), FourierFn::constant(cplx(1, 0))}, J);
  const cplx r1 = residue_coboundary(Q, SpectralCut(pi / 2), F, G, J);
  const cplx r2 = residue_coboundary(Q, SpectralCut(-pi / 2), F, G, J);
  CHECK(std::abs(0.5 * (r1 + r2)) < 1e-9);

  // control: the functional is not identically zero; a non-odd weight
  // a(x)|xi| produces a genuinely nonzero coboundary
  Symbol Aabs;
  Aabs.order = cplx(1, 0);
  Aabs.comps.resize(J + 1);
  Aabs.comps[0].plus = cosx();
  Aabs.comps[0].minus = cosx();
  const cplx rn = residue_coboundary(Q, SpectralCut(pi / 2), Aabs, G, J);
  CHECK(std::abs(rn) > 1e-3);
}

TEST_CASE("anomaly integrand vanishes for odd-class pairs") {
  const int J = 5;
  const Symbol A = fix::const_symbol_order1(cplx(0.21, 0), J);
  const Symbol B = fix::const_symbol_order2(cplx(0.4, 0), cplx(0.33, 0), J);
  const double thA = pi / 2, thB = pi;
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double alpha = thB + t * thA;
    const double beta = alpha - (t * 1 + 2) * pi;
    const cplx r = anomaly_integrand(A, B, thA, alpha, beta, t, J);
    CHECK(std::abs(r) < 1e-8);
  }
}
