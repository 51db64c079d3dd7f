#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfval/squarefree.hpp"

namespace sqfval {

/// A linear sparse family in F_q[t]^d: all tuples
///   (a_i b_i + b_i b_{d+i} + c_i)_{i=1..d} over scalar choices b in F_q^{2d}.
struct SparseSpec {
  std::uint32_t d = 0;
  std::vector<TPoly> a;
  std::vector<TPoly> b;
  std::vector<TPoly> c;

  SparseSpec(std::vector<TPoly> a_, std::vector<TPoly> b_, std::vector<TPoly> c_)
      : d(static_cast<std::uint32_t>(a_.size())),
        a(std::move(a_)),
        b(std::move(b_)),
        c(std::move(c_)) {
    if (d < 1 || b.size() != d || c.size() != d)
      throw std::invalid_argument("SparseSpec: a, b, c must share length d >= 1");
  }

  /// max degree over all entries; zero entries do not contribute, an
  /// all-constant spec has norm 0.
  int norm() const {
    int m = 0;
    for (const auto* v : {&a, &b, &c})
      for (const auto& u : *v) m = std::max(m, u.deg());
    return std::max(m, 0);
  }

  /// The sparse member at scalar point beta (size 2d).
  std::vector<TPoly> member(const std::vector<Fq>& beta) const {
    if (beta.size() != 2 * static_cast<std::size_t>(d))
      throw std::invalid_argument("SparseSpec::member: need 2d scalars");
    std::vector<TPoly> u;
    u.reserve(d);
    for (std::uint32_t i = 0; i < d; ++i)
      u.push_back(a[i] * beta[i] + b[i] * beta[d + i] + c[i]);
    return u;
  }
};

/// The constants the estimates run through, at their minimal values:
///   char_bound = norm * deg_x f + deg_t f
///   deg_bound  = (2 * char_bound - 1) * deg_x f.
struct BoundSet {
  int cap = 0;         // joint degree cap N
  int char_bound = 0;  // C(N)
  int deg_bound = 0;   // C~(N)
};

inline BoundSet compute_bounds(const XPoly& f, const SparseSpec& spec) {
  const int deg_x = std::max(f.deg_xvec(), 0);
  const int deg_t = std::max(f.deg_t(), 0);
  BoundSet b;
  b.cap = std::max({deg_x, deg_t, spec.norm()});
  b.char_bound = spec.norm() * deg_x + deg_t;
  b.deg_bound = (2 * b.char_bound - 1) * deg_x;
  return b;
}

/// Per-index hypothesis checks for the nonzero guarantee.
struct ConditionEntry {
  bool gcd_ok = false;      // gcd(a_i, b_i) = 1
  bool branch1_ok = false;  // p > C(N)  (shared across indices)
  bool branch2_ok = false;  // a_i != 0 and b_i/a_i not in F_q(t^p)
};

struct ConditionReport {
  std::uint32_t p = 0;  // characteristic the branch-2 criterion ran against
  std::vector<ConditionEntry> entries;
  bool overall = false;
};

/// gcd condition via gcd_t; membership of b/a in F_q(t^p) via the derivative
/// criterion b'a - ba' = 0 (quotient rule; valid for p > 0, which every
/// finite field satisfies).
inline ConditionReport validate_conditions(const XPoly& f,
                                           const SparseSpec& spec) {
  const BoundSet bounds = compute_bounds(f, spec);
  const bool branch1 =
      static_cast<long long>(f.field()->p()) > bounds.char_bound;
  ConditionReport rep;
  rep.p = f.field()->p();
  rep.entries.reserve(spec.d);
  bool all_gcd = true;
  bool all_branch2 = true;
  for (std::uint32_t i = 0; i < spec.d; ++i) {
    ConditionEntry e;
    const TPoly& a = spec.a[i];
    const TPoly& b = spec.b[i];
    e.gcd_ok = !(a.is_zero() && b.is_zero()) && gcd_t(a, b).is_one();
    e.branch1_ok = branch1;
    const TPoly wronskian = b.derivative() * a - b * a.derivative();
    e.branch2_ok = !a.is_zero() && !wronskian.is_zero();
    all_gcd = all_gcd && e.gcd_ok;
    all_branch2 = all_branch2 && e.branch2_ok;
    rep.entries.push_back(e);
  }
  rep.overall = all_gcd && (branch1 || all_branch2);
  return rep;
}

/// f~ = f(t, a_1 x_1 + b_1 x_{d+1} + c_1, ...): the substitution homomorphism
/// into 2d variables. Evaluating f~ at beta equals evaluating f at the
/// corresponding sparse member.
inline XPoly build_psi(const XPoly& f, const SparseSpec& spec) {
  if (f.nvars() != spec.d)
    throw std::invalid_argument("build_psi: f arity differs from spec.d");
  const std::uint32_t n2 = 2 * spec.d;
  std::vector<XPoly> images;
  images.reserve(spec.d);
  for (std::uint32_t i = 0; i < spec.d; ++i) {
    XPoly l = XPoly::from_tpoly(spec.c[i], n2);
    l = l + XPoly::var_x(f.field(), n2, i + 1) * spec.a[i];
    l = l + XPoly::var_x(f.field(), n2, spec.d + i + 1) * spec.b[i];
    images.push_back(std::move(l));
  }
  return f.substitute_x(images);
}

/// The vanishing polynomial and the constants that bound it.
struct VanishingPoly {
  CoefPoly P;
  int k = 0;  // deg_t of the substituted polynomial (0 for the t-free case)
  BoundSet bounds;
  ConditionReport conditions;
};

/// P = delta_k * D^k_t(f~) with k = deg_t f~; every scalar point whose sparse
/// value is not square-free is a zero of P. When f~ is t-free the vanishing
/// set is exactly the zero set of f~ itself, so P := f~. If the hypotheses
/// hold, P must be nonzero; a zero P then is a hard internal error.
inline VanishingPoly build_vanishing_poly(const XPoly& f,
                                          const SparseSpec& spec) {
  if (!is_squarefree_f(f).is_squarefree)
    throw std::invalid_argument("build_vanishing_poly: f is not square-free");
  VanishingPoly out{CoefPoly::zero(f.field(), 2 * spec.d), 0,
                    compute_bounds(f, spec), validate_conditions(f, spec)};
  const XPoly sub = build_psi(f, spec);
  const int k = sub.deg_t();
  if (k >= 1) {
    out.k = k;
    const XPoly lead = sub.coeff_of_t(static_cast<std::uint32_t>(k));
    out.P = CoefPoly(lead * disc_t(sub, k).poly());
  } else {
    out.k = 0;
    out.P = CoefPoly(sub);  // may be zero if the substitution collapses
  }
  if (out.conditions.overall && out.P.is_zero())
    throw InternalError(
        "build_vanishing_poly: hypotheses hold but P vanished identically");
  return out;
}

}  // namespace sqfval
