#pragma once

// 1-D classical and logarithmic pseudo-differential symbol calculus on the
// circle.  A symbol is a truncated expansion into positively homogeneous
// components; each component stores its values at xi = +1 and xi = -1 as
// periodic functions of x (the cosphere in dimension one is two points).
// Log symbols carry an extra gamma * log|xi| term.
//
// Conventions used throughout:
//   composition   sigma(AB) ~ sum_k (1/k!) d_xi^k sigma(A) * D_x^k sigma(B),
//                 D_x = -i d/dx;
//   d_xi on a degree-h component maps (plus, minus) to (h*plus, -h*minus);
//   d_xi on gamma*log|xi| gives the degree -1 component (gamma, -gamma);
//   residue       Res A = (1/2pi) Int [sigma_{-1}(x,1) + sigma_{-1}(x,-1)] dx,
//                 i.e. the sum of the two zeroth Fourier modes at degree -1.
// The resolvent expansion is graded strictly by joint homogeneity in
// (xi, lambda^{1/m}); its components are rational in lambda with poles only
// at the principal symbol value.

#include <complex>
#include <map>
#include <vector>

#include "oddzeta/complexcut.hpp"
#include "oddzeta/fourier.hpp"

namespace oddzeta::symb {

using cut::SpectralCut;

struct SymbolConfig {
  int bandwidth = 32;     // N: Fourier truncation for grid-sampled results
  int depth = 6;          // J: number of components beyond the leading one
  double fd_step = 1e-5;  // h_s for the log-symbol derivative in s
  double eps_sym = 1e-8;  // tolerance for the odd-class / odd-pair predicates
};

// One positively homogeneous component: values at xi = +1 and xi = -1.
// The degree is implied by the owning symbol (order - offset).
struct HomogComponent {
  FourierFn plus;
  FourierFn minus;
};

// Truncated symbol of (complex) order `order` with components of degrees
// order, order-1, ..., order-depth.  gamma != 0 marks a logarithmic symbol of
// type gamma (and then `order` is its degree).
struct Symbol {
  cplx order{0.0, 0.0};
  cplx gamma{0.0, 0.0};
  std::vector<HomogComponent> comps;

  int depth() const { return static_cast<int>(comps.size()) - 1; }
  cplx degree_at(int j) const { return order - cplx(j, 0); }
  bool is_classical() const { return gamma == cplx(0.0, 0.0); }
};

using ClassicalSymbol = Symbol;
using LogSymbol = Symbol;

// --- small algebra ---------------------------------------------------------

Symbol scale(const Symbol& A, cplx c);
// sum/difference; degrees must agree (offset-aligned components)
Symbol add(const Symbol& A, const Symbol& B);
Symbol sub(const Symbol& A, const Symbol& B);
// A + c * Id (adds c to the degree-0 component on both sides)
Symbol add_scalar(const Symbol& A, cplx c);
Symbol identity_symbol(int depth);

// falling product h (h-1) ... (h-k+1)
cplx falling(cplx h, int k);

// --- composition -----------------------------------------------------------

// Composition of classical symbols to depth J_out.  Log inputs are rejected
// (their k = 0 cross terms leave the representable class); commutators of log
// symbols go through commutator_symbol, where those terms cancel.
Symbol compose(const Symbol& A, const Symbol& B, int J_out);

// [A, B] = AB - BA; classical for any inputs (scalar symbols commute
// pointwise at k = 0 and the log parts drop under x-differentiation).
Symbol commutator_symbol(const Symbol& A, const Symbol& B, int J_out);

// --- predicates and the residue ---------------------------------------------

// max_j deviation from minus_j = (-1)^{m-j} plus_j  (infinity if the order is
// not an integer)
double odd_class_deviation(const Symbol& A);
bool is_odd_class(const Symbol& A, double eps = 1e-8);

// max_j deviation from minus_j(A) = (-1)^{m-j} plus_j(B); degrees must agree
double odd_pair_deviation(const Symbol& A, const Symbol& B);
bool is_odd_pair(const Symbol& A, const Symbol& B, double eps = 1e-8);

// (1/2pi) Int [sigma_{-1}(x,1) + sigma_{-1}(x,-1)] dx
cplx wodzicki_res(const Symbol& A);

// --- resolvent and powers ----------------------------------------------------

// Rational function of lambda: sum_p g_p(x) * (beta(x) - lambda)^{-p}.
struct RationalLambda {
  std::map<int, FourierFn> terms;  // p >= 1
};

FourierFn eval_rational(const RationalLambda& r, const FourierFn& beta, cplx lambda,
                        int grid_size, int bandwidth);

struct ResolventSymbolFamily {
  int depth = 0;
  FourierFn beta[2];                     // principal symbol at xi = +1 / -1
  std::vector<RationalLambda> comp[2];   // r_{-m-j} at xi = +1 / -1
};

// Seeley recursion for the resolvent symbols of an elliptic scalar symbol of
// positive (real) order.
ResolventSymbolFamily resolvent_symbols(const Symbol& A, int J, const SymbolConfig& cfg = {});

// Contour powers: components of A^s along the cut, by residue calculus at the
// principal-symbol pole.  Calibrated: s = 1 reproduces A and s = 0 the
// identity, verified on every such call.
Symbol power_symbol(const Symbol& A, cplx s, const SpectralCut& cut, int J,
                    const SymbolConfig& cfg = {});

// Logarithm: gamma = order, components d/ds at 0 of the power components,
// by Richardson-extrapolated central differences of step cfg.fd_step.
Symbol log_symbol(const Symbol& A, const SpectralCut& cut, int J, const SymbolConfig& cfg = {});

// max over j <= J of | sigma_{sm-j}(A^s_(theta))(x,-1)
//                     - (-1)^j e^{i m s pi} sigma_{sm-j}(A^s_(theta-m pi))(x,1) |
double check_asodd(const Symbol& A, const SpectralCut& cut, cplx s, int J,
                   const SymbolConfig& cfg = {});

// Res(U(t)^2 + V(t)^2) for the deformation A^t B at parameter t, with cuts
// theta_A for A, alpha_t for A^t_(theta_A) B and beta_t for the partner
// deformation at theta_A - m_A pi.
cplx anomaly_integrand(const Symbol& A, const Symbol& B, double theta_A, double alpha_t,
                       double beta_t, double t, int J, const SymbolConfig& cfg = {});

// -(1/m) Res([log_(theta) Q, A] B): the weighted-trace coboundary on
// commutators.
cplx residue_coboundary(const Symbol& Q, const SpectralCut& cut, const Symbol& A,
                        const Symbol& B, int J, const SymbolConfig& cfg = {});

}  // namespace oddzeta::symb
