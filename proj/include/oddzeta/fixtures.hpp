#pragma once

// Built-in model operators and symbol fixtures used by the verification
// suites and the tests.  Randomized fixtures draw from a seeded engine; the
// seed comes from the ODDZETA_SEED environment variable when set.

#include <cstdint>
#include <random>
#include <vector>

#include "oddzeta/spectralmodel.hpp"
#include "oddzeta/symbolcalc.hpp"

namespace oddzeta::fix {

using cplx = std::complex<double>;

std::uint64_t default_seed();  // ODDZETA_SEED or a fixed constant

// --- spectral fixtures -----------------------------------------------------

// first-order model with eigenvalues n + c over the full lattice
model::SpectralOperator dc_operator(double c);
// even-order model with eigenvalues |n|^2 + a2 over the full lattice
model::SpectralOperator laplace_operator(double a2);

// dc_operator(c) with k conjugate exception pairs moved onto the imaginary
// axis at +-i t_j (multiplicities in {1,2}); m_plus returns the resulting
// count on the positive ray
model::SpectralOperator symmetric_sign_fixture(std::mt19937_64& rng, int pairs, int& m_plus);

// --- symbol fixtures ---------------------------------------------------------

// differential-type symbol: coefficient functions by xi-degree d = 0..m,
// minus side fixed by minus_d = (-1)^d plus_d; padded with zeros to depth J
symb::Symbol differential_symbol(const std::vector<symb::FourierFn>& coeff_by_degree, int J);

// xi + c and xi^2 + b xi + c builders (constant coefficients)
symb::Symbol const_symbol_order1(cplx c, int J);
symb::Symbol const_symbol_order2(cplx b, cplx c, int J);

// random periodic function with the given bandwidth and coefficient scale
symb::FourierFn random_fn(std::mt19937_64& rng, int bandwidth, double scale);

// random odd-class elliptic symbol of the given order: constant leading
// coefficient 1, x-dependent lower components obeying the odd-class sign rule
symb::Symbol random_odd_symbol(std::mt19937_64& rng, int order, int bandwidth, int J,
                               double scale = 0.4);

// random classical symbol with independent plus/minus components (not odd)
symb::Symbol random_symbol(std::mt19937_64& rng, int order, int bandwidth, int J,
                           double scale = 0.4);

// the partner making (A, B) an odd pair: plus_j(B) = (-1)^{m-j} minus_j(A)
symb::Symbol odd_partner(const symb::Symbol& A);

// cut angles clear of the leading values of an odd-class symbol of the given
// order: theta and theta - m*pi avoid the rays through +-1
double odd_symbol_cut(int order);

}  // namespace oddzeta::fix
