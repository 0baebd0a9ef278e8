#include "oddzeta/fixtures.hpp"

#include <cstdlib>
#include <string>

namespace oddzeta::fix {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ODDZETA_SEED")) {
    try {
      return std::stoull(std::string(env));
    } catch (...) {
      fail(errc::config_error, "ODDZETA_SEED must be an unsigned integer");
    }
  }
  return 9120257ULL;
}

model::SpectralOperator dc_operator(double c) {
  model::SpectralOperator A;
  A.law.order = 1;
  A.law.terms = {{cplx(1, 0), 1, 1}, {cplx(c, 0), 0, 0}};
  A.index_set = model::IndexSet::Z;
  return A;
}

model::SpectralOperator laplace_operator(double a2) {
  model::SpectralOperator A;
  A.law.order = 2;
  A.law.terms = {{cplx(1, 0), 0, 2}, {cplx(a2, 0), 0, 0}};
  A.index_set = model::IndexSet::Z;
  return A;
}

model::SpectralOperator symmetric_sign_fixture(std::mt19937_64& rng, int pairs, int& m_plus) {
  std::uniform_real_distribution<double> uc(0.15, 0.85), ut(0.5, 4.0);
  std::uniform_int_distribution<int> umult(1, 2);
  model::SpectralOperator A = dc_operator(uc(rng));
  m_plus = 0;
  for (int j = 0; j < pairs; ++j) {
    const std::int64_t n = j + 1;
    const double t = ut(rng);
    const int mult = umult(rng);
    A.exceptions[n] = {cplx(0, t), mult};
    A.exceptions[-n] = {cplx(0, -t), mult};
    m_plus += mult;
  }
  return A;
}

symb::Symbol differential_symbol(const std::vector<symb::FourierFn>& coeff_by_degree, int J) {
  const int m = static_cast<int>(coeff_by_degree.size()) - 1;
  symb::Symbol S;
  S.order = cplx(m, 0);
  S.comps.resize(J + 1);
  for (int j = 0; j <= J && j <= m; ++j) {
    const int d = m - j;
    const double par = (d % 2 == 0) ? 1.0 : -1.0;
    S.comps[j].plus = coeff_by_degree[d];
    S.comps[j].minus = coeff_by_degree[d] * par;
  }
  return S;
}

symb::Symbol const_symbol_order1(cplx c, int J) {
  return differential_symbol({symb::FourierFn::constant(c), symb::FourierFn::constant(cplx(1, 0))},
                             J);
}

symb::Symbol const_symbol_order2(cplx b, cplx c, int J) {
  return differential_symbol({symb::FourierFn::constant(c), symb::FourierFn::constant(b),
                              symb::FourierFn::constant(cplx(1, 0))},
                             J);
}

symb::FourierFn random_fn(std::mt19937_64& rng, int bandwidth, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<int, cplx> modes;
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    const double damp = scale / (1.0 + std::abs(k));
    modes[k] = cplx(u(rng), u(rng)) * damp;
  }
  return symb::FourierFn::from_modes(modes);
}

symb::Symbol random_odd_symbol(std::mt19937_64& rng, int order, int bandwidth, int J,
                               double scale) {
  symb::Symbol S;
  S.order = cplx(order, 0);
  S.comps.resize(J + 1);
  // constant leading coefficient keeps the principal angles trivial to pick
  const double lead_par = (order % 2 == 0) ? 1.0 : -1.0;
  S.comps[0].plus = symb::FourierFn::constant(cplx(1, 0));
  S.comps[0].minus = symb::FourierFn::constant(cplx(lead_par, 0));
  for (int j = 1; j <= J; ++j) {
    const int d = order - j;
    const double par = (std::abs(d) % 2 == 0) ? 1.0 : -1.0;
    const symb::FourierFn f = random_fn(rng, bandwidth, scale / (1 + j));
    S.comps[j].plus = f;
    S.comps[j].minus = f * par;
  }
  return S;
}

symb::Symbol random_symbol(std::mt19937_64& rng, int order, int bandwidth, int J, double scale) {
  symb::Symbol S;
  S.order = cplx(order, 0);
  S.comps.resize(J + 1);
  for (int j = 0; j <= J; ++j) {
    S.comps[j].plus = random_fn(rng, bandwidth, scale / (1 + j));
    S.comps[j].minus = random_fn(rng, bandwidth, scale / (1 + j));
  }
  return S;
}

symb::Symbol odd_partner(const symb::Symbol& A) {
  int m = static_cast<int>(std::lround(A.order.real()));
  symb::Symbol B;
  B.order = A.order;
  B.gamma = A.gamma;
  B.comps.resize(A.comps.size());
  for (int j = 0; j <= A.depth(); ++j) {
    const double par = ((m - j) % 2 == 0) ? 1.0 : -1.0;
    B.comps[j].plus = A.comps[j].minus * par;
    B.comps[j].minus = A.comps[j].plus * par;
  }
  return B;
}

double odd_symbol_cut(int order) {
  // leading values are +-1 (odd order) or +1 (even order); pi/2 or pi keep
  // both theta and theta - m*pi off the rays through the leading values
  return (order % 2 == 1) ? cut::pi / 2 : cut::pi;
}

}  // namespace oddzeta::fix
