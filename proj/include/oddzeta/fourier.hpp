#pragma once

// Truncated Fourier series on the circle of circumference 2*pi, used for the
// x-dependence of symbol components.  Coefficients are stored for modes
// k = -B..B; products convolve exactly (bandwidth grows), nonlinear
// operations go through a uniform grid.

#include <complex>
#include <map>
#include <vector>

#include "oddzeta/errors.hpp"

namespace oddzeta::symb {

using cplx = std::complex<double>;

class FourierFn {
 public:
  FourierFn() : bw_(0), c_(1, cplx(0, 0)) {}
  static FourierFn constant(cplx v);
  static FourierFn from_modes(const std::map<int, cplx>& modes);
  // inverse DFT of samples at x_j = 2*pi*j/G, keeping modes |k| <= bw
  static FourierFn from_grid(const std::vector<cplx>& values, int bw);

  int bandwidth() const { return bw_; }
  cplx coeff(int k) const {
    return (k < -bw_ || k > bw_) ? cplx(0, 0) : c_[k + bw_];
  }
  void set_coeff(int k, cplx v);

  cplx zeroth() const { return c_[bw_]; }
  cplx eval(double x) const;
  std::vector<cplx> to_grid(int grid_size) const;

  FourierFn operator+(const FourierFn& o) const;
  FourierFn operator-(const FourierFn& o) const;
  FourierFn operator*(cplx s) const;
  FourierFn mul(const FourierFn& o) const;  // exact convolution
  FourierFn dx() const;                     // D_x = -i d/dx

  double max_abs_coeff() const;
  bool near_zero(double tol) const { return max_abs_coeff() <= tol; }

  // drop trailing modes below rel_tol * max |c_k|
  FourierFn trimmed(double rel_tol = 1e-14) const;
  // hard bandwidth cap: drop modes with |k| > max_bw
  FourierFn capped(int max_bw) const;

 private:
  explicit FourierFn(int bw) : bw_(bw), c_(2 * bw + 1, cplx(0, 0)) {}
  int bw_;
  std::vector<cplx> c_;
};

}  // namespace oddzeta::symb
