#include "oddzeta/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace oddzeta::symb {

namespace {
constexpr int kMaxBandwidth = 4096;
constexpr double kTwoPi = 6.283185307179586476925;
}  // namespace

FourierFn FourierFn::constant(cplx v) {
  FourierFn f(0);
  f.c_[0] = v;
  return f;
}

FourierFn FourierFn::from_modes(const std::map<int, cplx>& modes) {
  int bw = 0;
  for (const auto& [k, v] : modes) bw = std::max(bw, std::abs(k));
  FourierFn f(bw);
  for (const auto& [k, v] : modes) f.c_[k + bw] = v;
  return f;
}

FourierFn FourierFn::from_grid(const std::vector<cplx>& values, int bw) {
  const int g = static_cast<int>(values.size());
  if (g < 2 * bw + 1) fail(errc::config_error, "grid too small for requested bandwidth");
  FourierFn f(bw);
  for (int k = -bw; k <= bw; ++k) {
    cplx acc(0, 0);
    for (int j = 0; j < g; ++j) acc += values[j] * std::polar(1.0, -k * kTwoPi * j / g);
    f.c_[k + bw] = acc / static_cast<double>(g);
  }
  return f;
}

void FourierFn::set_coeff(int k, cplx v) {
  if (std::abs(k) > bw_) {
    const int nb = std::abs(k);
    std::vector<cplx> nc(2 * nb + 1, cplx(0, 0));
    for (int i = -bw_; i <= bw_; ++i) nc[i + nb] = c_[i + bw_];
    c_ = std::move(nc);
    bw_ = nb;
  }
  c_[k + bw_] = v;
}

cplx FourierFn::eval(double x) const {
  cplx acc(0, 0);
  for (int k = -bw_; k <= bw_; ++k) acc += c_[k + bw_] * std::polar(1.0, k * x);
  return acc;
}

std::vector<cplx> FourierFn::to_grid(int grid_size) const {
  std::vector<cplx> v(grid_size);
  for (int j = 0; j < grid_size; ++j) v[j] = eval(kTwoPi * j / grid_size);
  return v;
}

FourierFn FourierFn::operator+(const FourierFn& o) const {
  const int bw = std::max(bw_, o.bw_);
  FourierFn f(bw);
  for (int k = -bw; k <= bw; ++k) f.c_[k + bw] = coeff(k) + o.coeff(k);
  return f;
}

FourierFn FourierFn::operator-(const FourierFn& o) const {
  const int bw = std::max(bw_, o.bw_);
  FourierFn f(bw);
  for (int k = -bw; k <= bw; ++k) f.c_[k + bw] = coeff(k) - o.coeff(k);
  return f;
}

FourierFn FourierFn::operator*(cplx s) const {
  FourierFn f = *this;
  for (auto& v : f.c_) v *= s;
  return f;
}

FourierFn FourierFn::mul(const FourierFn& o) const {
  const int bw = bw_ + o.bw_;
  if (bw > kMaxBandwidth)
    fail(errc::depth_insufficient, "bandwidth overflow in symbol product");
  FourierFn f(bw);
  for (int a = -bw_; a <= bw_; ++a) {
    const cplx ca = c_[a + bw_];
    if (ca == cplx(0, 0)) continue;
    for (int b = -o.bw_; b <= o.bw_; ++b) f.c_[a + b + bw] += ca * o.c_[b + o.bw_];
  }
  return f;
}

FourierFn FourierFn::dx() const {
  FourierFn f = *this;
  for (int k = -bw_; k <= bw_; ++k) f.c_[k + bw_] *= static_cast<double>(k);
  return f;
}

double FourierFn::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

FourierFn FourierFn::trimmed(double rel_tol) const {
  const double floor = rel_tol * max_abs_coeff();
  int bw = 0;
  for (int k = -bw_; k <= bw_; ++k)
    if (std::abs(c_[k + bw_]) > floor) bw = std::max(bw, std::abs(k));
  if (bw == bw_) return *this;
  FourierFn f(bw);
  for (int k = -bw; k <= bw; ++k) f.c_[k + bw] = c_[k + bw_];
  return f;
}

FourierFn FourierFn::capped(int max_bw) const {
  if (bw_ <= max_bw) return *this;
  FourierFn f(max_bw);
  for (int k = -max_bw; k <= max_bw; ++k) f.c_[k + max_bw] = c_[k + bw_];
  return f;
}

}  // namespace oddzeta::symb
