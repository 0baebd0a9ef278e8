#include <cmath>
#include <complex>

#include "doctest.h"
#include "oddzeta/errors.hpp"
#include "oddzeta/hurwitz.hpp"

using namespace oddzeta;
using oddzeta::zeta::hurwitz_zeta;
using oddzeta::zeta::hurwitz_zeta_pair;
using cplx = std::complex<double>;

TEST_CASE("hurwitz zeta known values") {
  const double pi = 3.14159265358979323846;
  CHECK(std::abs(hurwitz_zeta(cplx(2, 0), 1.0) - pi * pi / 6.0) < 1e-12);
  CHECK(std::abs(hurwitz_zeta(cplx(-1, 0), 1.0) - cplx(-1.0 / 12.0, 0)) < 1e-12);
  for (double a : {0.1, 0.25, 0.5, 0.75, 1.0})
    CHECK(std::abs(hurwitz_zeta(cplx(0, 0), a) - cplx(0.5 - a, 0)) < 1e-12);
  // zeta(3), zeta(4)
  CHECK(std::abs(hurwitz_zeta(cplx(3, 0), 1.0) - 1.2020569031595942854) < 1e-12);
  CHECK(std::abs(hurwitz_zeta(cplx(4, 0), 1.0) - pi * pi * pi * pi / 90.0) < 1e-12);
  CHECK_THROWS_AS(hurwitz_zeta(cplx(1, 0), 1.0), oddzeta::error);
}

TEST_CASE("hurwitz zeta z-derivative against lgamma identity") {
  // d/dz zeta_H(z,a) at z=0 equals ln Gamma(a) - ln(2*pi)/2
  const double half_l2pi = 0.5 * std::log(2.0 * 3.14159265358979323846);
  for (double a : {0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const auto h = hurwitz_zeta_pair(cplx(0, 0), a);
    CHECK(std::abs(h.dz - cplx(std::lgamma(a) - half_l2pi, 0)) < 1e-11);
  }
}

TEST_CASE("hurwitz zeta derivative consistent with finite differences") {
  // moderate z only: the finite-difference oracle is itself noise limited
  // once |zeta_H| grows large
  const double h = 1e-5;
  for (double zr : {-1.5, -0.6, 0.3, 2.5, 5.0}) {
    for (double zi : {-2.0, 0.0, 3.0}) {
      const cplx z(zr, zi);
      if (std::abs(z - cplx(1, 0)) < 0.2) continue;
      const auto p = hurwitz_zeta_pair(z, 0.7);
      const cplx fd = (hurwitz_zeta(z + h, 0.7) - hurwitz_zeta(z - h, 0.7)) / (2 * h);
      CHECK(std::abs(p.dz - fd) < 1e-6 * (1.0 + std::abs(p.dz)));
    }
  }
}

TEST_CASE("hurwitz zeta against direct summation in the convergent region") {
  for (double a : {0.3, 1.0}) {
    for (double zr : {2.5, 4.0}) {
      const cplx z(zr, 1.5);
      cplx direct(0, 0);
      for (int k = 200000; k >= 0; --k) direct += std::exp(-z * std::log(k + a));
      // direct truncation error ~ (2e5)^{1-Re z}
      CHECK(std::abs(hurwitz_zeta(z, a) - direct) < 1e-7);
    }
  }
}
