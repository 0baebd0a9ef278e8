#pragma once

// Branch-cut complex arithmetic: directed logarithms and powers along a
// spectral cut, solid-angle membership, Agmon-angle tests and nudging.
//
// Branch convention: log along the cut at angle theta has imaginary part in
// the half-open interval (theta - 2*pi, theta].  Angles are raw radians and
// are never normalized on storage; theta and theta - 2*k*pi denote different
// branches.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "oddzeta/errors.hpp"

namespace oddzeta::cut {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Relative angular tolerance for ray-coincidence tests.  Inputs are exact
// model data; this only guards float noise.
inline constexpr double eps_ray = 1e-12;

// Spectral cut at angle theta (radians, unnormalized).
struct SpectralCut {
  double theta = 0.0;
  SpectralCut() = default;
  explicit SpectralCut(double t) : theta(t) {}
};

// Open solid angle {rho e^{i a} : theta1 < a < theta2}, rho >= 0.
struct SolidAngle {
  double theta1 = 0.0;
  double theta2 = 0.0;
  SolidAngle() = default;
  SolidAngle(double t1, double t2) : theta1(t1), theta2(t2) {
    if (!(t1 <= t2)) fail(errc::config_error, "SolidAngle requires theta1 <= theta2");
  }
};

// Reduce x into [0, 2*pi).
inline double wrap_2pi(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

// Circular distance between two ray directions, in [0, pi].
inline double ray_distance(double a, double b) {
  double d = wrap_2pi(a - b);
  return std::min(d, two_pi - d);
}

// Directed logarithm: exp(result) = lambda, Im(result) in (theta - 2*pi, theta].
inline cplx branch_log(cplx lambda, const SpectralCut& cut) {
  if (lambda == cplx(0.0, 0.0)) fail(errc::zero_argument, "branch_log of zero");
  const double a = std::arg(lambda);  // principal, in (-pi, pi]
  double k = std::floor((cut.theta - a) / two_pi);
  double im = a + two_pi * k;
  // float-noise safety at the interval ends
  if (im > cut.theta) im -= two_pi;
  if (im <= cut.theta - two_pi) im += two_pi;
  return {std::log(std::abs(lambda)), im};
}

// lambda^s along the cut: exp(s * branch_log(lambda)).
inline cplx complex_power(cplx lambda, cplx s, const SpectralCut& cut) {
  return std::exp(s * branch_log(lambda, cut));
}

// True iff some representative of arg(lambda) lies strictly in (theta1, theta2).
// Every nonzero lambda is a member once the angle spans 2*pi or more.
inline bool in_solid_angle(cplx lambda, const SolidAngle& ang) {
  if (lambda == cplx(0.0, 0.0)) fail(errc::zero_argument, "in_solid_angle of zero");
  const double span = ang.theta2 - ang.theta1;
  if (span >= two_pi) return true;
  const double u = wrap_2pi(std::arg(lambda) - ang.theta1);
  return u > 0.0 && u < span;
}

// True iff the ray at theta stays clear of every listed eigenvalue argument.
inline bool is_agmon(const std::vector<double>& eigen_args, const SpectralCut& cut) {
  for (double a : eigen_args)
    if (ray_distance(a, cut.theta) <= eps_ray) return false;
  return true;
}

// Smallest positive angular gap from x up to the next listed argument
// (counterclockwise), in (0, 2*pi].  Arguments coinciding with x are the
// caller's NotPrincipal case and must be excluded beforehand.
inline double gap_above(const std::vector<double>& args, double x) {
  double best = two_pi;
  for (double a : args) {
    double d = wrap_2pi(a - x);
    if (d <= eps_ray) d = two_pi;  // coincident or full wrap
    best = std::min(best, d);
  }
  return best;
}

// Nudge theta upward to theta' = theta + delta so that no eigenvalue argument
// falls in (theta, theta'] or (theta - order*pi, theta' - order*pi] mod 2*pi.
// delta is half the smaller of the two gaps above theta and theta - order*pi;
// with an empty spectrum nothing bounds the gap and delta is capped at pi/8.
inline SpectralCut nudge_agmon(const std::vector<double>& eigen_args, double theta, int order) {
  if (order <= 0) fail(errc::config_error, "nudge_agmon: order must be positive");
  const double shifted = theta - order * pi;
  for (double a : eigen_args) {
    if (ray_distance(a, theta) <= eps_ray || ray_distance(a, shifted) <= eps_ray)
      fail(errc::not_principal, "nudge_agmon: theta sits on an eigenvalue argument");
  }
  double delta;
  if (eigen_args.empty()) {
    delta = pi / 8.0;
  } else {
    delta = 0.5 * std::min(gap_above(eigen_args, theta), gap_above(eigen_args, shifted));
  }
  return SpectralCut(theta + delta);
}

}  // namespace oddzeta::cut
