#include "oddzeta/hurwitz.hpp"

#include <cmath>

#include "oddzeta/errors.hpp"

namespace oddzeta::zeta {

namespace {

// Bernoulli numbers B_2, B_4, ..., B_24.
constexpr double kBernoulli[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};
constexpr int kOrder = 12;   // correction terms
constexpr int kShift = 32;   // directly summed terms

}  // namespace

// Euler-Maclaurin:
//   zeta_H(z,a) = sum_{k<N} (k+a)^{-z} + (N+a)^{1-z}/(z-1) + (N+a)^{-z}/2
//               + sum_j B_{2j}/(2j)! * (z)_{2j-1} * (N+a)^{-z-2j+1}
// differentiated term by term in z; Pochhammer pairs (P, dP) are accumulated
// by the product rule to stay pole-free at z = -i.
HurwitzResult hurwitz_zeta_pair(cplx z, double a) {
  if (a <= 0.0) fail(errc::config_error, "hurwitz_zeta: a must be positive");
  if (std::abs(z - cplx(1.0, 0.0)) < 1e-14) fail(errc::pole_at_one, "hurwitz_zeta at z = 1");

  cplx val(0.0, 0.0), dz(0.0, 0.0);
  for (int k = 0; k < kShift; ++k) {
    const double x = k + a;
    const double lx = std::log(x);
    const cplx t = std::exp(-z * lx);
    val += t;
    dz += -lx * t;
  }

  const double w = kShift + a;
  const double lw = std::log(w);
  const cplx wmz = std::exp(-z * lw);  // w^{-z}

  // (N+a)^{1-z} / (z-1)
  const cplx zm1 = z - cplx(1.0, 0.0);
  const cplx head = w * wmz / zm1;
  val += head;
  dz += head * (-lw - 1.0 / zm1);

  val += 0.5 * wmz;
  dz += -0.5 * lw * wmz;

  // correction terms; factor (N+a)^{-z-2j+1}
  cplx poch(1.0, 0.0), dpoch(0.0, 0.0);  // (z)_{2j-1} and its derivative
  double fact = 1.0;                      // (2j)!
  double wpow = w;                        // w^{2j-1}
  for (int j = 1; j <= kOrder; ++j) {
    // extend Pochhammer from (z)_{2j-3} to (z)_{2j-1}
    const int lo = (j == 1) ? 0 : 2 * j - 3;
    for (int i = lo; i <= 2 * j - 2; ++i) {
      dpoch = dpoch * (z + cplx(i, 0.0)) + poch;
      poch = poch * (z + cplx(i, 0.0));
    }
    fact *= (2.0 * j) * (2.0 * j - 1.0);
    if (j > 1) wpow *= w * w;
    const cplx base = wmz / wpow;  // w^{-z-2j+1}
    const double c = kBernoulli[j - 1] / fact;
    val += c * poch * base;
    dz += c * base * (dpoch - poch * lw);
  }
  return {val, dz};
}

cplx hurwitz_zeta(cplx z, double a) { return hurwitz_zeta_pair(z, a).value; }

}  // namespace oddzeta::zeta
