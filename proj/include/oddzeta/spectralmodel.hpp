#pragma once

// Eigenvalue-model operators on the integer lattice: bilateral power laws
// with finitely many exceptional eigenvalues.  The value at index n is
//   sum_j c_j * sgn(n)^{e_j} * |n|^{p_j},   sgn(0) := 0, 0^0 := 1,
// optionally overridden at finitely many indices.  Everything downstream
// (powers, logs, zeta continuation, determinants) consumes this model.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "oddzeta/complexcut.hpp"
#include "oddzeta/errors.hpp"

namespace oddzeta::model {

using cplx = std::complex<double>;
using cut::SolidAngle;
using cut::SpectralCut;

// Laurent-type polynomial in 1/k: q -> coefficient of k^{-q}.
using PolyInv = std::map<int, cplx>;

PolyInv poly_mul(const PolyInv& a, const PolyInv& b);
void poly_axpy(PolyInv& acc, cplx scale, const PolyInv& p);

struct LawTerm {
  cplx c;
  int sgn_exp = 0;  // 0 or 1
  int pow = 0;      // <= order
};

struct SpectralLaw {
  int order = 1;  // m > 0
  std::vector<LawTerm> terms;

  cplx value(std::int64_t n) const;
  void validate() const;
};

enum class IndexSet { Z, ZNonzero };

struct EigenException {
  cplx value;
  int mult = 1;
};

// Per-branch tail data of a law: on the branch n = sign*k, k >= 1,
//   lambda = leading * k^m * (1 + u(k)),  u(k) = sum_q v_q k^{-q}.
struct BranchData {
  cplx leading;
  PolyInv u;      // q >= 1
  double u_norm;  // sum |v_q|
};

struct SpectralOperator {
  SpectralLaw law;
  IndexSet index_set = IndexSet::ZNonzero;
  std::map<std::int64_t, EigenException> exceptions;

  bool contains(std::int64_t n) const {
    return index_set == IndexSet::Z || n != 0;
  }
  int order() const { return law.order; }

  // Eigenvalue with multiplicity; exception value when present.
  std::pair<cplx, int> eigenvalue(std::int64_t n) const;
  // Law-path value, ignoring exceptions.
  cplx law_value(std::int64_t n) const;

  BranchData branch(int sign) const;  // sign = +1 or -1
  void validate() const;
};

// Smallest k such that for all j >= k the branch argument deviates from
// arg(leading) by less than max_dev and |u| <= 1/2.
std::int64_t tail_settle(const BranchData& b, double max_dev);

// Throws NotAgmon (or ZeroEigenvalue) unless the ray at cut.theta is clear
// of the whole spectrum, with a positive margin around the tail directions.
void check_agmon(const SpectralOperator& A, const SpectralCut& cut);

// Deduplicated eigenvalue arguments mod 2*pi: all explicit eigenvalues up to
// the tail-settle bound plus the two tail directions.  Feed to is_agmon /
// nudge_agmon.
std::vector<double> occurring_args(const SpectralOperator& A);

// --- projections and classification ------------------------------------

struct ProjectionDescriptor {
  enum class Kind { Finite, Cofinite, Tail };
  Kind kind = Kind::Finite;
  // Finite: in-angle indices.  Cofinite: out-of-angle indices.
  // Tail: in-angle indices with |n| < tail_from; beyond, membership follows
  // the per-branch flags (far exceptions land in the lists too).
  std::vector<std::int64_t> indices;
  bool pos_tail_in = false;
  bool neg_tail_in = false;
  std::int64_t tail_from = 0;

  bool member(std::int64_t n) const;
  // Rank with multiplicity; only defined for Finite descriptors.
  int rank(const SpectralOperator& A) const;
};

ProjectionDescriptor spectral_projection(const SpectralOperator& A, const SolidAngle& angle);

// Eigenvalue counts (with algebraic multiplicity) on the positive/negative
// imaginary rays.
std::pair<int, int> count_imaginary_axis(const SpectralOperator& A);

// True iff the eigenvalue multiset is invariant under complex conjugation.
bool is_symmetric_spectrum(const SpectralOperator& A);

// --- algebra -------------------------------------------------------------

SpectralOperator square_op(const SpectralOperator& A);
SpectralOperator multiply_commuting(const SpectralOperator& A, const SpectralOperator& B);

// --- eigenvalue-wise families ---------------------------------------------

// One additive group of a family tail on a fixed branch:
//   k^{mu} * sum_q [poly_q + poly_log_q * ln k] * k^{-q}
struct TailGroup {
  cplx mu;
  PolyInv poly;
  PolyInv poly_log;
};

struct BranchTail {
  std::vector<TailGroup> groups;
  std::int64_t valid_from = 1;
};

// Eigenvalue-wise family n -> w_n: finite linear combination of constants,
// finite-rank data, and pointwise powers/logs of model operators.  Carries
// enough structure for the zeta continuation to expand its tails.
class EigenFamily {
 public:
  static EigenFamily identity();
  static EigenFamily constant(cplx c);
  static EigenFamily finite_rank(std::map<std::int64_t, cplx> support);
  // power_op / log_op: cut must be Agmon for A (checked).
  static EigenFamily power_of(const SpectralOperator& A, cplx s, const SpectralCut& cut);
  static EigenFamily log_of(const SpectralOperator& A, const SpectralCut& cut);

  EigenFamily scaled(cplx c) const;
  EigenFamily plus(const EigenFamily& other) const;

  cplx value(std::int64_t n) const;      // exceptions of underlying ops honored
  cplx law_value(std::int64_t n) const;  // law path only

  // Tail expansion on branch sign, log/binomial series truncated at depth K.
  BranchTail tail(int sign, int expansion_depth) const;

  double growth_degree() const;  // max Re(mu) over groups
  bool has_log_growth() const;
  bool is_trivial_identity() const;  // exactly the constant-1 weight

  // Indices where value() may differ from law_value(), plus finite supports.
  std::vector<std::int64_t> special_indices() const;

  // Index-set consistency with the weight operator of a zeta function.
  void require_same_basis(const SpectralOperator& Q) const;

 private:
  enum class Kind { Constant, Finite, Power, Log };
  struct Term {
    Kind kind;
    cplx coeff{1.0, 0.0};
    cplx param{0.0, 0.0};
    std::shared_ptr<const SpectralOperator> op;
    SpectralCut cut;
    std::map<std::int64_t, cplx> support;
  };
  std::vector<Term> terms_;
};

// Spec-level wrappers.
inline EigenFamily power_op(const SpectralOperator& A, cplx s, const SpectralCut& cut) {
  return EigenFamily::power_of(A, s, cut);
}
inline EigenFamily log_op(const SpectralOperator& A, const SpectralCut& cut) {
  return EigenFamily::log_of(A, cut);
}

}  // namespace oddzeta::model
