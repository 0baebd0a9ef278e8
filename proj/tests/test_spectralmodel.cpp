#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oddzeta/spectralmodel.hpp"

using namespace oddzeta;
using namespace oddzeta::model;
using oddzeta::cut::pi;
using oddzeta::cut::SpectralCut;
using oddzeta::cut::two_pi;
using cplx = std::complex<double>;

namespace {

SpectralOperator make_dc(double c) {
  SpectralOperator A;
  A.law.order = 1;
  A.law.terms = {{cplx(1, 0), 1, 1}, {cplx(c, 0), 0, 0}};
  A.index_set = IndexSet::Z;
  return A;
}

SpectralOperator make_laplace(double a2) {
  SpectralOperator A;
  A.law.order = 2;
  A.law.terms = {{cplx(1, 0), 0, 2}, {cplx(a2, 0), 0, 0}};
  A.index_set = IndexSet::Z;
  return A;
}

}  // namespace

TEST_CASE("eigenvalue lookup") {
  SpectralOperator A = make_dc(1.0 / 3.0);
  CHECK(A.eigenvalue(2).first == cplx(7.0 / 3.0, 0));
  CHECK(A.eigenvalue(2).second == 1);
  A.exceptions[1] = {cplx(0, 1), 1};
  CHECK(A.eigenvalue(1).first == cplx(0, 1));
  CHECK(make_laplace(1.0).eigenvalue(-3).first == cplx(10, 0));
  SpectralOperator Z0 = make_dc(0.5);
  Z0.index_set = IndexSet::ZNonzero;
  CHECK_THROWS_AS(Z0.eigenvalue(0), oddzeta::error);
}

TEST_CASE("square_op squares the law symbolically") {
  SpectralOperator A = make_dc(0.25);
  A.exceptions[1] = {cplx(0, 1), 2};
  SpectralOperator S = square_op(A);
  CHECK(S.order() == 2);
  for (std::int64_t n : {-5, -1, 0, 2, 9}) {
    const cplx expect = A.law_value(n) * A.law_value(n);
    CHECK(std::abs(S.law_value(n) - expect) < 1e-14);
  }
  CHECK(S.eigenvalue(1).first == cplx(-1, 0));
  CHECK(S.eigenvalue(1).second == 2);
}

TEST_CASE("multiply_commuting matches square_op and mixes exceptions") {
  SpectralOperator A = make_dc(1.0 / 3.0);
  SpectralOperator S = square_op(A);
  SpectralOperator P = multiply_commuting(A, A);
  for (std::int64_t n = -6; n <= 6; ++n)
    CHECK(std::abs(P.eigenvalue(n).first - S.eigenvalue(n).first) < 1e-14);

  SpectralOperator B = make_laplace(1.0);
  SpectralOperator AB = multiply_commuting(A, B);
  CHECK(AB.order() == 3);
  for (std::int64_t n : {-4, -1, 0, 1, 7})
    CHECK(std::abs(AB.eigenvalue(n).first - A.eigenvalue(n).first * B.eigenvalue(n).first) < 1e-12);
  // leading term is sgn(n)|n|^3
  cplx lead(0, 0);
  for (const auto& t : AB.law.terms)
    if (t.pow == 3) {
      CHECK(t.sgn_exp == 1);
      lead = t.c;
    }
  CHECK(lead == cplx(1, 0));

  A.exceptions[2] = {cplx(0, 3), 1};
  SpectralOperator AB2 = multiply_commuting(A, B);
  CHECK(AB2.eigenvalue(2).first == cplx(0, 3) * cplx(5, 0));

  SpectralOperator C = make_dc(0.5);
  C.index_set = IndexSet::ZNonzero;
  CHECK_THROWS_AS(multiply_commuting(A, C), oddzeta::error);
}

TEST_CASE("spectral_projection") {
  SpectralOperator A = make_dc(1.0 / 3.0);

  // all eigenvalues real: nothing in the upper angle
  auto d = spectral_projection(A, cut::SolidAngle(pi / 4, 3 * pi / 4));
  CHECK(d.kind == ProjectionDescriptor::Kind::Finite);
  CHECK(d.indices.empty());
  CHECK(d.rank(A) == 0);

  SpectralOperator E = make_dc(1.0 / 3.0);
  E.exceptions[1] = {cplx(0, 1), 1};
  auto de = spectral_projection(E, cut::SolidAngle(pi / 4, 3 * pi / 4));
  CHECK(de.kind == ProjectionDescriptor::Kind::Finite);
  REQUIRE(de.indices.size() == 1);
  CHECK(de.indices[0] == 1);
  CHECK(de.rank(E) == 1);

  // right half plane: membership is n + 1/3 > 0, a split descriptor
  auto dh = spectral_projection(A, cut::SolidAngle(-pi / 2, pi / 2));
  for (std::int64_t n = -20; n <= 20; ++n)
    CHECK(dh.member(n) == (static_cast<double>(n) + 1.0 / 3.0 > 0.0));

  // full plane
  auto dall = spectral_projection(A, cut::SolidAngle(0, 4 * pi));
  CHECK(dall.kind == ProjectionDescriptor::Kind::Cofinite);
  CHECK(dall.indices.empty());

  // boundary eigenvalue rejected
  CHECK_THROWS_AS(spectral_projection(A, cut::SolidAngle(0, pi / 2)), oddzeta::error);
}

TEST_CASE("count_imaginary_axis") {
  SpectralOperator A = make_dc(1.0 / 3.0);
  CHECK(count_imaginary_axis(A) == std::pair<int, int>(0, 0));
  A.exceptions[1] = {cplx(0, 1), 1};
  A.exceptions[-1] = {cplx(0, -1), 1};
  CHECK(count_imaginary_axis(A) == std::pair<int, int>(1, 1));
  SpectralOperator B = make_dc(1.0 / 3.0);
  B.exceptions[2] = {cplx(0, 3), 2};
  CHECK(count_imaginary_axis(B).first == 2);
}

TEST_CASE("is_symmetric_spectrum") {
  SpectralOperator A = make_dc(0.4);
  CHECK(is_symmetric_spectrum(A));
  A.exceptions[1] = {cplx(0, 1), 1};
  CHECK_FALSE(is_symmetric_spectrum(A));
  A.exceptions[-1] = {cplx(0, -1), 1};
  CHECK(is_symmetric_spectrum(A));
  // mismatched multiplicities break the pairing
  A.exceptions[-1].mult = 2;
  CHECK_FALSE(is_symmetric_spectrum(A));
}

TEST_CASE("power_op and log_op basics") {
  SpectralOperator D = make_dc(0.5);
  const SpectralCut up(pi / 2);
  EigenFamily p1 = power_op(D, cplx(1, 0), up);
  for (std::int64_t n = -4; n <= 4; ++n)
    CHECK(std::abs(p1.value(n) - D.eigenvalue(n).first) < 1e-13);

  // lambda_{-1} = -1/2: (-1/2)^{1/2} at theta = pi/2 is -i/sqrt(2)
  EigenFamily ph = power_op(D, cplx(0.5, 0), up);
  CHECK(std::abs(ph.value(-1) - cplx(0, -1.0 / std::sqrt(2.0))) < 1e-14);

  EigenFamily p0 = power_op(D, cplx(0, 0), up);
  for (std::int64_t n = -3; n <= 3; ++n) CHECK(std::abs(p0.value(n) - cplx(1, 0)) < 1e-15);

  // cut on the spectrum is rejected
  CHECK_THROWS_AS(power_op(D, cplx(1, 0), SpectralCut(0.0)), oddzeta::error);
}

TEST_CASE("log_op branch relations") {
  SpectralOperator D = make_dc(1.0 / 3.0);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uth(0.05, two_pi - 0.05);
  std::uniform_int_distribution<int> uk(-2, 2);

  // log at theta vs theta - 2k*pi differs by 2*pi*i*k
  for (int trial = 0; trial < 20; ++trial) {
    double th = uth(rng);
    if (std::min(std::abs(th - pi), th) < 0.05) continue;
    const int k = uk(rng);
    EigenFamily l1 = log_op(D, SpectralCut(th));
    EigenFamily l2 = log_op(D, SpectralCut(th - two_pi * k));
    for (std::int64_t n = -6; n <= 6; ++n)
      CHECK(std::abs(l1.value(n) - l2.value(n) - cplx(0, two_pi * k)) < 1e-12);
  }

  // general angle relation: difference is 2*pi*i*(k + [lambda in solid angle])
  for (int trial = 0; trial < 40; ++trial) {
    const double t1 = uth(rng), t2 = uth(rng) + two_pi * uk(rng);
    if (t2 < t1) continue;
    const double frac1 = std::min({std::abs(t1), std::abs(t1 - pi), std::abs(t1 - two_pi)});
    const double frac2 = std::min({cut::ray_distance(t2, 0.0), cut::ray_distance(t2, pi)});
    if (frac1 < 0.05 || frac2 < 0.05) continue;
    const int k = static_cast<int>(std::floor((t2 - t1) / two_pi));
    EigenFamily l1 = log_op(D, SpectralCut(t1));
    EigenFamily l2 = log_op(D, SpectralCut(t2));
    for (std::int64_t n = -5; n <= 5; ++n) {
      const cplx lam = D.eigenvalue(n).first;
      const double ind =
          cut::in_solid_angle(lam, cut::SolidAngle(t1, t2 - two_pi * k)) ? 1.0 : 0.0;
      CHECK(std::abs(l2.value(n) - l1.value(n) - cplx(0, two_pi * (k + ind))) < 1e-12);
    }
  }
}

TEST_CASE("occurring args feed is_agmon") {
  SpectralOperator D = make_dc(1.0 / 3.0);
  auto args = occurring_args(D);
  CHECK(cut::is_agmon(args, SpectralCut(3 * pi / 4)));
  CHECK_FALSE(cut::is_agmon(args, SpectralCut(pi)));
  CHECK_FALSE(cut::is_agmon(args, SpectralCut(0.0)));
}
