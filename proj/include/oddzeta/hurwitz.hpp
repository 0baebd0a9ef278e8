#pragma once

// Hurwitz zeta zeta_H(z, a) = sum_{k>=0} (k+a)^{-z}, continued in z by
// Euler-Maclaurin, together with its z-derivative.  Target accuracy is
// relative 1e-10 on the strip |Re z| <= 6, |Im z| <= 10 (it does noticeably
// better in practice).

#include <complex>

namespace oddzeta::zeta {

using cplx = std::complex<double>;

struct HurwitzResult {
  cplx value;
  cplx dz;  // d/dz zeta_H(z, a)
};

// Value and z-derivative in one pass.  a > 0; pole at z = 1 (PoleAtOne).
HurwitzResult hurwitz_zeta_pair(cplx z, double a);

// Value only.
cplx hurwitz_zeta(cplx z, double a);

}  // namespace oddzeta::zeta
