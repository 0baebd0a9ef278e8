#include "oddzeta/spectralmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oddzeta::model {

namespace {

constexpr std::int64_t kSettleFloor = 8;
constexpr std::int64_t kSettleCap = 1000000;

double ipow(double base, int p) {
  if (p == 0) return 1.0;
  if (p < 0) return 1.0 / ipow(base, -p);
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= base;
  return r;
}

cplx binom(cplx s, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= (s - cplx(i, 0.0)) / cplx(i + 1, 0.0);
  return r;
}

}  // namespace

PolyInv poly_mul(const PolyInv& a, const PolyInv& b) {
  PolyInv r;
  for (const auto& [qa, ca] : a)
    for (const auto& [qb, cb] : b) r[qa + qb] += ca * cb;
  return r;
}

void poly_axpy(PolyInv& acc, cplx scale, const PolyInv& p) {
  for (const auto& [q, c] : p) acc[q] += scale * c;
}

// --- law ------------------------------------------------------------------

cplx SpectralLaw::value(std::int64_t n) const {
  const double sg = (n > 0) ? 1.0 : (n < 0 ? -1.0 : 0.0);
  const double an = std::abs(static_cast<double>(n));
  cplx v(0.0, 0.0);
  for (const auto& t : terms) {
    const double sf = (t.sgn_exp == 0) ? 1.0 : sg;
    double pf;
    if (n == 0)
      pf = (t.pow == 0) ? 1.0 : 0.0;  // |0|^p, 0^0 := 1
    else
      pf = ipow(an, t.pow);
    v += t.c * sf * pf;
  }
  return v;
}

void SpectralLaw::validate() const {
  if (order <= 0) fail(errc::config_error, "law order must be positive");
  if (terms.empty()) fail(errc::config_error, "law has no terms");
  cplx lead(0.0, 0.0);
  for (const auto& t : terms) {
    if (t.pow > order) fail(errc::config_error, "law term power exceeds order");
    if (t.sgn_exp != 0 && t.sgn_exp != 1) fail(errc::config_error, "sgn exponent must be 0 or 1");
    if (t.pow == order) lead += t.c;  // presence check only
  }
  if (lead == cplx(0.0, 0.0)) {
    // leading coefficients may still be nonzero per branch; check both
    cplx lp(0.0, 0.0), lm(0.0, 0.0);
    for (const auto& t : terms)
      if (t.pow == order) {
        lp += t.c;
        lm += t.c * (t.sgn_exp ? -1.0 : 1.0);
      }
    if (lp == cplx(0.0, 0.0) || lm == cplx(0.0, 0.0))
      fail(errc::not_elliptic, "law leading coefficient vanishes on a branch");
  }
}

// --- operator ---------------------------------------------------------------

std::pair<cplx, int> SpectralOperator::eigenvalue(std::int64_t n) const {
  if (!contains(n)) fail(errc::index_out_of_set, "index " + std::to_string(n));
  if (auto it = exceptions.find(n); it != exceptions.end())
    return {it->second.value, it->second.mult};
  return {law.value(n), 1};
}

cplx SpectralOperator::law_value(std::int64_t n) const { return law.value(n); }

BranchData SpectralOperator::branch(int sign) const {
  const double sg = sign >= 0 ? 1.0 : -1.0;
  cplx lead(0.0, 0.0);
  for (const auto& t : law.terms)
    if (t.pow == law.order) lead += t.c * (t.sgn_exp ? sg : 1.0);
  if (lead == cplx(0.0, 0.0)) fail(errc::not_elliptic, "branch leading value vanishes");
  BranchData b;
  b.leading = lead;
  for (const auto& t : law.terms) {
    if (t.pow == law.order) continue;
    const int q = law.order - t.pow;
    b.u[q] += t.c * (t.sgn_exp ? sg : 1.0) / lead;
  }
  double s = 0.0;
  for (const auto& [q, v] : b.u) s += std::abs(v);
  b.u_norm = s;
  return b;
}

void SpectralOperator::validate() const {
  law.validate();
  for (const auto& [n, e] : exceptions) {
    if (!contains(n)) fail(errc::index_out_of_set, "exception at excluded index");
    if (e.mult <= 0) fail(errc::config_error, "exception multiplicity must be positive");
    if (e.value == cplx(0.0, 0.0)) fail(errc::zero_eigenvalue, "exception eigenvalue is zero");
  }
  // invertibility on the explicitly reachable range; tails are nonzero by
  // ellipticity once |u| < 1
  const std::int64_t n0 = std::max(tail_settle(branch(+1), cut::pi / 2),
                                   tail_settle(branch(-1), cut::pi / 2));
  for (std::int64_t n = -n0; n <= n0; ++n) {
    if (!contains(n)) continue;
    if (eigenvalue(n).first == cplx(0.0, 0.0))
      fail(errc::zero_eigenvalue, "zero eigenvalue at index " + std::to_string(n));
  }
}

std::int64_t tail_settle(const BranchData& b, double max_dev) {
  if (b.u_norm == 0.0) return 1;
  const double dev = std::clamp(max_dev, 1e-9, cut::pi / 2);
  const double bound = std::min(0.5, std::sin(dev));
  const double k = b.u_norm / bound;
  if (k > static_cast<double>(kSettleCap))
    fail(errc::not_agmon, "spectral tail settles too slowly for this configuration");
  return std::max<std::int64_t>(kSettleFloor, static_cast<std::int64_t>(std::ceil(k)) + 1);
}

void check_agmon(const SpectralOperator& A, const SpectralCut& cut_) {
  A.validate();
  std::int64_t n0 = 1;
  for (int sign : {+1, -1}) {
    const BranchData b = A.branch(sign);
    const double gap = cut::ray_distance(std::arg(b.leading), cut_.theta);
    if (gap <= cut::eps_ray)
      fail(errc::not_agmon, "cut coincides with a spectral tail direction");
    n0 = std::max(n0, tail_settle(b, gap / 2));
  }
  for (std::int64_t n = -n0; n <= n0; ++n) {
    if (!A.contains(n)) continue;
    const cplx lam = A.eigenvalue(n).first;
    if (cut::ray_distance(std::arg(lam), cut_.theta) <= cut::eps_ray)
      fail(errc::not_agmon, "eigenvalue on the cut ray at index " + std::to_string(n));
  }
  for (const auto& [n, e] : A.exceptions) {
    if (cut::ray_distance(std::arg(e.value), cut_.theta) <= cut::eps_ray)
      fail(errc::not_agmon, "exceptional eigenvalue on the cut ray");
  }
}

std::vector<double> occurring_args(const SpectralOperator& A) {
  A.validate();
  std::int64_t n0 = 1;
  std::vector<double> args;
  for (int sign : {+1, -1}) {
    const BranchData b = A.branch(sign);
    n0 = std::max(n0, tail_settle(b, 1e-3));
    args.push_back(cut::wrap_2pi(std::arg(b.leading)));
  }
  n0 = std::min(n0, static_cast<std::int64_t>(20000));
  for (std::int64_t n = -n0; n <= n0; ++n) {
    if (!A.contains(n)) continue;
    args.push_back(cut::wrap_2pi(std::arg(A.eigenvalue(n).first)));
  }
  for (const auto& [n, e] : A.exceptions) args.push_back(cut::wrap_2pi(std::arg(e.value)));
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end(),
                         [](double a, double b) { return std::abs(a - b) <= cut::eps_ray; }),
             args.end());
  return args;
}

// --- projections -------------------------------------------------------------

bool ProjectionDescriptor::member(std::int64_t n) const {
  const bool listed = std::binary_search(indices.begin(), indices.end(), n);
  switch (kind) {
    case Kind::Finite: return listed;
    case Kind::Cofinite: return !listed;
    case Kind::Tail:
      if (std::llabs(n) >= tail_from) return n > 0 ? pos_tail_in : neg_tail_in;
      return listed;
  }
  return false;
}

int ProjectionDescriptor::rank(const SpectralOperator& A) const {
  if (kind != Kind::Finite) fail(errc::config_error, "rank of a non-finite projection");
  int r = 0;
  for (std::int64_t n : indices) r += A.eigenvalue(n).second;
  return r;
}

ProjectionDescriptor spectral_projection(const SpectralOperator& A, const SolidAngle& angle) {
  A.validate();
  ProjectionDescriptor d;
  if (angle.theta2 - angle.theta1 >= cut::two_pi) {
    d.kind = ProjectionDescriptor::Kind::Cofinite;
    return d;
  }
  bool tail_in[2];
  std::int64_t n0 = 1;
  for (int i = 0; i < 2; ++i) {
    const int sign = i == 0 ? +1 : -1;
    const BranchData b = A.branch(sign);
    const double dir = std::arg(b.leading);
    const double margin = std::min(cut::ray_distance(dir, angle.theta1),
                                   cut::ray_distance(dir, angle.theta2));
    if (margin <= 16 * cut::eps_ray)
      fail(errc::boundary_eigenvalue, "spectral tail accumulates on an angle boundary ray");
    tail_in[i] = cut::in_solid_angle(std::polar(1.0, dir), angle);
    n0 = std::max(n0, tail_settle(b, margin));
  }
  for (const auto& [n, e] : A.exceptions) n0 = std::max<std::int64_t>(n0, std::llabs(n) + 1);

  std::vector<std::int64_t> in, out;
  for (std::int64_t n = -n0 + 1; n < n0; ++n) {
    if (!A.contains(n)) continue;
    const cplx lam = A.eigenvalue(n).first;
    const double to_edge = std::min(cut::ray_distance(std::arg(lam), angle.theta1),
                                    cut::ray_distance(std::arg(lam), angle.theta2));
    if (to_edge <= cut::eps_ray)
      fail(errc::boundary_eigenvalue, "eigenvalue on an angle boundary ray");
    (cut::in_solid_angle(lam, angle) ? in : out).push_back(n);
  }

  if (!tail_in[0] && !tail_in[1]) {
    d.kind = ProjectionDescriptor::Kind::Finite;
    d.indices = std::move(in);
  } else if (tail_in[0] && tail_in[1]) {
    d.kind = ProjectionDescriptor::Kind::Cofinite;
    d.indices = std::move(out);
  } else {
    d.kind = ProjectionDescriptor::Kind::Tail;
    d.indices = std::move(in);
    d.pos_tail_in = tail_in[0];
    d.neg_tail_in = tail_in[1];
    d.tail_from = n0;
  }
  return d;
}

std::pair<int, int> count_imaginary_axis(const SpectralOperator& A) {
  A.validate();
  std::int64_t n0 = 1;
  for (int sign : {+1, -1}) {
    const BranchData b = A.branch(sign);
    const double dir = std::arg(b.leading);
    const double margin = std::min(cut::ray_distance(dir, cut::pi / 2),
                                   cut::ray_distance(dir, -cut::pi / 2));
    if (margin <= 16 * cut::eps_ray)
      fail(errc::infinite_on_axis, "spectral tail lies on the imaginary axis");
    n0 = std::max(n0, tail_settle(b, margin));
  }
  for (const auto& [n, e] : A.exceptions) n0 = std::max<std::int64_t>(n0, std::llabs(n) + 1);

  int mp = 0, mm = 0;
  for (std::int64_t n = -n0 + 1; n < n0; ++n) {
    if (!A.contains(n)) continue;
    const auto [lam, mult] = A.eigenvalue(n);
    if (lam.real() == 0.0) {
      if (lam.imag() > 0.0)
        mp += mult;
      else if (lam.imag() < 0.0)
        mm += mult;
    }
  }
  return {mp, mm};
}

bool is_symmetric_spectrum(const SpectralOperator& A) {
  bool real_mode = true, reflect_mode = true;
  for (const auto& t : A.law.terms) {
    if (t.c.imag() != 0.0) real_mode = false;
    // reflect: conj(c) == (-1)^e c, i.e. e even -> c real, e odd -> c imaginary
    if (t.sgn_exp % 2 == 0) {
      if (t.c.imag() != 0.0) reflect_mode = false;
    } else {
      if (t.c.real() != 0.0) reflect_mode = false;
    }
  }
  if (real_mode) {
    // any multiset of reals is self-conjugate; exception values must pair up
    std::map<std::pair<double, double>, long> mult;
    for (const auto& [n, e] : A.exceptions) mult[{e.value.real(), e.value.imag()}] += e.mult;
    for (const auto& [v, m] : mult) {
      if (v.second == 0.0) continue;
      auto it = mult.find({v.first, -v.second});
      if (it == mult.end() || it->second != m) return false;
    }
    return true;
  }
  if (reflect_mode) {
    // conj(value(n)) == value(-n); exceptions must respect the involution
    for (const auto& [n, e] : A.exceptions) {
      if (n == 0) {
        if (e.value.imag() != 0.0) return false;
        continue;
      }
      auto it = A.exceptions.find(-n);
      if (it == A.exceptions.end()) return false;
      if (std::conj(it->second.value) != e.value || it->second.mult != e.mult) return false;
    }
    return true;
  }
  return false;
}

// --- algebra -------------------------------------------------------------

namespace {

SpectralLaw law_product(const SpectralLaw& a, const SpectralLaw& b) {
  std::map<std::pair<int, int>, cplx> acc;  // (sgn_exp, pow) -> coeff
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms)
      acc[{(ta.sgn_exp + tb.sgn_exp) % 2, ta.pow + tb.pow}] += ta.c * tb.c;
  SpectralLaw r;
  r.order = a.order + b.order;
  for (const auto& [key, c] : acc)
    if (c != cplx(0.0, 0.0)) r.terms.push_back({c, key.first, key.second});
  return r;
}

}  // namespace

SpectralOperator square_op(const SpectralOperator& A) {
  SpectralOperator r;
  r.law = law_product(A.law, A.law);
  r.index_set = A.index_set;
  for (const auto& [n, e] : A.exceptions) r.exceptions[n] = {e.value * e.value, e.mult};
  return r;
}

SpectralOperator multiply_commuting(const SpectralOperator& A, const SpectralOperator& B) {
  if (A.index_set != B.index_set)
    fail(errc::index_set_mismatch, "operators do not share an index set");
  SpectralOperator r;
  r.law = law_product(A.law, B.law);
  r.index_set = A.index_set;
  for (const auto& [n, e] : A.exceptions) {
    auto itb = B.exceptions.find(n);
    int mult = e.mult;
    if (itb != B.exceptions.end() && itb->second.mult != e.mult)
      fail(errc::mult_mismatch, "conflicting multiplicities at index " + std::to_string(n));
    r.exceptions[n] = {e.value * B.eigenvalue(n).first, mult};
  }
  for (const auto& [n, e] : B.exceptions) {
    if (r.exceptions.count(n)) continue;
    r.exceptions[n] = {A.eigenvalue(n).first * e.value, e.mult};
  }
  return r;
}

// --- families -----------------------------------------------------------

EigenFamily EigenFamily::identity() { return constant(cplx(1.0, 0.0)); }

EigenFamily EigenFamily::constant(cplx c) {
  EigenFamily f;
  Term t;
  t.kind = Kind::Constant;
  t.coeff = c;
  f.terms_.push_back(std::move(t));
  return f;
}

EigenFamily EigenFamily::finite_rank(std::map<std::int64_t, cplx> support) {
  EigenFamily f;
  Term t;
  t.kind = Kind::Finite;
  t.support = std::move(support);
  f.terms_.push_back(std::move(t));
  return f;
}

EigenFamily EigenFamily::power_of(const SpectralOperator& A, cplx s, const SpectralCut& cut_) {
  check_agmon(A, cut_);
  EigenFamily f;
  Term t;
  t.kind = Kind::Power;
  t.param = s;
  t.op = std::make_shared<SpectralOperator>(A);
  t.cut = cut_;
  f.terms_.push_back(std::move(t));
  return f;
}

EigenFamily EigenFamily::log_of(const SpectralOperator& A, const SpectralCut& cut_) {
  check_agmon(A, cut_);
  EigenFamily f;
  Term t;
  t.kind = Kind::Log;
  t.op = std::make_shared<SpectralOperator>(A);
  t.cut = cut_;
  f.terms_.push_back(std::move(t));
  return f;
}

EigenFamily EigenFamily::scaled(cplx c) const {
  EigenFamily f = *this;
  for (auto& t : f.terms_) t.coeff *= c;
  return f;
}

EigenFamily EigenFamily::plus(const EigenFamily& other) const {
  EigenFamily f = *this;
  f.terms_.insert(f.terms_.end(), other.terms_.begin(), other.terms_.end());
  return f;
}

cplx EigenFamily::value(std::int64_t n) const {
  cplx v(0.0, 0.0);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::Constant: v += t.coeff; break;
      case Kind::Finite: {
        auto it = t.support.find(n);
        if (it != t.support.end()) v += t.coeff * it->second;
        break;
      }
      case Kind::Power:
        v += t.coeff * cut::complex_power(t.op->eigenvalue(n).first, t.param, t.cut);
        break;
      case Kind::Log:
        v += t.coeff * cut::branch_log(t.op->eigenvalue(n).first, t.cut);
        break;
    }
  }
  return v;
}

cplx EigenFamily::law_value(std::int64_t n) const {
  cplx v(0.0, 0.0);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::Constant: v += t.coeff; break;
      case Kind::Finite: {
        auto it = t.support.find(n);
        if (it != t.support.end()) v += t.coeff * it->second;
        break;
      }
      case Kind::Power:
        v += t.coeff * cut::complex_power(t.op->law_value(n), t.param, t.cut);
        break;
      case Kind::Log:
        v += t.coeff * cut::branch_log(t.op->law_value(n), t.cut);
        break;
    }
  }
  return v;
}

BranchTail EigenFamily::tail(int sign, int expansion_depth) const {
  BranchTail bt;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::Constant: {
        TailGroup g;
        g.mu = 0.0;
        g.poly[0] = t.coeff;
        bt.groups.push_back(std::move(g));
        break;
      }
      case Kind::Finite:
        break;  // no tail; picked up exactly by the remainder loop
      case Kind::Power: {
        const BranchData b = t.op->branch(sign);
        const cplx bl = cut::branch_log(b.leading, t.cut);
        const double gap = cut::ray_distance(std::arg(b.leading), t.cut.theta);
        bt.valid_from = std::max(bt.valid_from, tail_settle(b, gap / 2));
        TailGroup g;
        g.mu = t.param * static_cast<double>(t.op->order());
        const cplx front = t.coeff * std::exp(t.param * bl);
        PolyInv upow{{0, cplx(1.0, 0.0)}};
        g.poly[0] += front;  // k = 0 term
        for (int k = 1; k <= expansion_depth; ++k) {
          upow = poly_mul(upow, b.u);
          poly_axpy(g.poly, front * binom(t.param, k), upow);
        }
        bt.groups.push_back(std::move(g));
        break;
      }
      case Kind::Log: {
        const BranchData b = t.op->branch(sign);
        const cplx bl = cut::branch_log(b.leading, t.cut);
        const double gap = cut::ray_distance(std::arg(b.leading), t.cut.theta);
        bt.valid_from = std::max(bt.valid_from, tail_settle(b, gap / 2));
        TailGroup g;
        g.mu = 0.0;
        g.poly[0] = t.coeff * bl;
        PolyInv upow{{0, cplx(1.0, 0.0)}};
        for (int k = 1; k <= expansion_depth; ++k) {
          upow = poly_mul(upow, b.u);
          const double c = (k % 2 == 1 ? 1.0 : -1.0) / k;
          poly_axpy(g.poly, t.coeff * c, upow);
        }
        g.poly_log[0] = t.coeff * static_cast<double>(t.op->order());
        bt.groups.push_back(std::move(g));
        break;
      }
    }
  }
  return bt;
}

double EigenFamily::growth_degree() const {
  double d = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::Constant:
      case Kind::Log: d = std::max(d, 0.0); break;
      case Kind::Finite: break;
      case Kind::Power: d = std::max(d, t.param.real() * t.op->order()); break;
    }
  }
  return d;
}

bool EigenFamily::has_log_growth() const {
  for (const auto& t : terms_)
    if (t.kind == Kind::Log) return true;
  return false;
}

bool EigenFamily::is_trivial_identity() const {
  return terms_.size() == 1 && terms_[0].kind == Kind::Constant &&
         terms_[0].coeff == cplx(1.0, 0.0);
}

std::vector<std::int64_t> EigenFamily::special_indices() const {
  std::vector<std::int64_t> v;
  for (const auto& t : terms_) {
    if (t.kind == Kind::Finite)
      for (const auto& [n, val] : t.support) v.push_back(n);
    if ((t.kind == Kind::Power || t.kind == Kind::Log) && t.op)
      for (const auto& [n, e] : t.op->exceptions) v.push_back(n);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void EigenFamily::require_same_basis(const SpectralOperator& Q) const {
  for (const auto& t : terms_)
    if ((t.kind == Kind::Power || t.kind == Kind::Log) && t.op &&
        t.op->index_set != Q.index_set)
      fail(errc::index_set_mismatch, "weight family and operator do not share a basis");
}

}  // namespace oddzeta::model
