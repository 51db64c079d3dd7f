#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfval/resultant.hpp"

namespace sqfval {

/// Outcome of a square-freeness check. The witness, when present, is a
/// nonconstant polynomial whose square divides the input; production is
/// best-effort and a false verdict may come without one.
template <class P>
struct SqfVerdict {
  bool is_squarefree = false;
  bool input_zero = false;
  std::optional<P> witness;
};

/// Square-freeness in F_q[t]. Units are square-free (vacuously), zero is not
/// (every square divides it). Nonzero non-units: square-free iff
/// gcd(u, u') = 1, with u' = 0 meaning u is a p-th power.
inline SqfVerdict<TPoly> is_squarefree_t(const TPoly& u) {
  SqfVerdict<TPoly> v;
  if (u.is_zero()) {
    v.input_zero = true;
    return v;
  }
  if (u.is_constant()) {
    v.is_squarefree = true;
    return v;
  }
  const TPoly du = u.derivative();
  if (du.is_zero()) {
    auto root = pth_power_root(u);
    if (!root)
      throw InternalError("is_squarefree_t: vanishing derivative without p-th power");
    v.witness = *root;
    return v;
  }
  TPoly g = gcd_t(u, du);
  if (g.is_constant()) {
    v.is_squarefree = true;
    return v;
  }
  // Witness attempts: the repeated primes of tame multiplicity sit in
  // gcd(g, u/g); failing that, g itself may square in.
  const TPoly cof = u.divmod(g).first;
  TPoly w = gcd_t(g, cof);
  auto squares_in = [&](const TPoly& s) {
    if (s.is_constant()) return false;
    auto [q1, r1] = u.divmod(s);
    if (!r1.is_zero()) return false;
    return q1.divmod(s).second.is_zero();
  };
  if (squares_in(w))
    v.witness = w;
  else if (squares_in(g))
    v.witness = g;
  return v;
}

/// Square-freeness of f in F_q[t][x_1..x_D]: the content must be square-free
/// in F_q[t], and the primitive part must have constant gcd with its partial
/// derivatives (all of them zero forces a p-th power). Sound and complete
/// over a perfect coefficient field.
inline SqfVerdict<XPoly> is_squarefree_f(const XPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree_f: zero input");
  SqfVerdict<XPoly> v;
  auto [content, primitive] = content_and_primitive(f);
  const auto content_verdict = is_squarefree_t(content);
  if (!content_verdict.is_squarefree) {
    if (content_verdict.witness)
      v.witness = XPoly::from_tpoly(*content_verdict.witness, f.nvars());
    return v;
  }
  if (primitive.is_constant()) {
    v.is_squarefree = true;
    return v;
  }
  bool any_partial = false;
  XPoly g = primitive;
  XPoly acc = g;
  for (std::uint32_t slot = 0; slot <= f.nvars(); ++slot) {
    const XPoly d = g.partial_derivative(slot);
    if (d.is_zero()) continue;
    any_partial = true;
    if (!acc.is_constant()) acc = gcd_multi(acc, d);
  }
  if (!any_partial) {
    auto root = pth_power_split(g);
    if (!root)
      throw InternalError("is_squarefree_f: all partials vanish without p-th power");
    v.witness = *root;
    return v;
  }
  if (acc.is_constant()) {
    v.is_squarefree = true;
    return v;
  }
  auto squares_in = [&](const XPoly& s) {
    if (s.is_constant()) return false;
    auto q1 = try_divide(g, s);
    if (!q1) return false;
    return try_divide(*q1, s).has_value();
  };
  const XPoly cof = exact_div(g, acc);
  if (!cof.is_constant()) {
    const XPoly w = gcd_multi(acc, cof);
    if (squares_in(w)) {
      v.witness = w;
      return v;
    }
  }
  if (squares_in(acc)) v.witness = acc;
  return v;
}

/// Separability of f as a univariate polynomial in t over F_q(x...):
/// nonvanishing of the full-degree discriminant as a polynomial.
inline bool is_separable_in_t(const XPoly& f) {
  const int k = f.deg_t();
  if (k < 1) throw std::invalid_argument("is_separable_in_t: deg_t f < 1");
  return !disc_t(f, k).is_zero();
}

// ---------------------------------------------------------------------------
// Brute-force oracles. Independent of the gcd/derivative route above: they
// enumerate candidate divisors and test divisibility by long division.
// Ceilings keep them at desk scale (q <= 3, degree <= 6 univariate,
// deg_t + deg_x <= 4 bivariate).

inline void check_oracle_ceiling_t(const TPoly& u) {
  if (u.field()->q() > 3 || u.deg() > 6)
    throw std::invalid_argument("brute_squarefree_oracle: instance above ceiling");
}

inline bool brute_squarefree_oracle(const TPoly& u) {
  check_oracle_ceiling_t(u);
  if (u.is_zero()) return false;
  if (u.is_constant()) return true;
  const auto* fd = u.field();
  const auto elems = enumerate_field(fd);
  for (int d = 1; 2 * d <= u.deg(); ++d) {
    // All monic candidates of degree d.
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= fd->q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Fq> coeffs;
      coeffs.reserve(static_cast<std::size_t>(d) + 1);
      std::uint64_t rem = idx;
      for (int i = 0; i < d; ++i) {
        coeffs.push_back(elems[static_cast<std::size_t>(rem % fd->q())]);
        rem /= fd->q();
      }
      coeffs.push_back(Fq::one(fd));
      const TPoly s = TPoly::from_coeffs(fd, std::move(coeffs));
      if ((s * s).divides(u)) return false;
    }
  }
  return true;
}

namespace detail {

// All exponent tuples bounded per slot and by total degree, ascending.
inline std::vector<XPoly::Exps> bounded_exponents(
    const std::vector<std::uint32_t>& bounds,
    std::uint32_t max_total = std::uint32_t(-1)) {
  std::vector<XPoly::Exps> out;
  XPoly::Exps cur(bounds.size(), 0);
  while (true) {
    std::uint32_t total = 0;
    for (auto v : cur) total += v;
    if (total <= max_total) out.push_back(cur);
    std::size_t i = bounds.size();
    while (i > 0) {
      --i;
      if (cur[i] < bounds[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < bounds.size(); ++j) cur[j] = 0;
        break;
      }
      if (i == 0) return out;
    }
  }
}

// Enumerate nonconstant polynomials on the given monomial support whose
// lexicographically leading coefficient is one, and feed them to visit until
// it returns true. Returns whether any candidate was accepted.
template <class Visit>
bool enumerate_candidates(const FieldDescriptor* fd, std::uint32_t nx,
                          const std::vector<XPoly::Exps>& monomials,
                          std::uint64_t budget, Visit visit) {
  const std::uint64_t q = fd->q();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (total > budget)
      throw std::invalid_argument("brute oracle: instance above ceiling");
    total *= q;
  }
  if (total > budget)
    throw std::invalid_argument("brute oracle: instance above ceiling");
  const auto elems = enumerate_field(fd);
  std::vector<std::uint64_t> digit(monomials.size(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      digit[i] = rem % q;
      rem /= q;
    }
    // Leading coefficient must be one: find the largest monomial with a
    // nonzero coefficient (monomials are lex-ascending).
    std::size_t lead = monomials.size();
    for (std::size_t i = monomials.size(); i-- > 0;) {
      if (digit[i] != 0) {
        lead = i;
        break;
      }
    }
    if (lead == monomials.size()) continue;  // zero polynomial
    if (digit[lead] != 1) continue;
    XPoly s(fd, nx);
    for (std::size_t i = 0; i < monomials.size(); ++i)
      if (digit[i] != 0)
        s.add_term(monomials[i], elems[static_cast<std::size_t>(digit[i])]);
    if (s.is_constant()) continue;
    if (visit(s)) return true;
  }
  return false;
}

}  // namespace detail

inline void check_oracle_ceiling_f(const XPoly& f) {
  const int dt = std::max(f.deg_t(), 0);
  const int dx = std::max(f.deg_xvec(), 0);
  if (f.field()->q() > 3 || dt + dx > 4)
    throw std::invalid_argument(
        "brute_squarefree_oracle_f: instance above ceiling");
}

inline bool brute_squarefree_oracle_f(const XPoly& f) {
  check_oracle_ceiling_f(f);
  if (f.is_zero()) return false;
  if (f.is_constant()) return true;
  std::vector<std::uint32_t> bounds(f.nvars() + 1, 0);
  bounds[0] = static_cast<std::uint32_t>(std::max(f.deg_t(), 0) / 2);
  for (std::uint32_t i = 1; i <= f.nvars(); ++i)
    bounds[i] = static_cast<std::uint32_t>(std::max(f.deg_x(i), 0) / 2);
  const auto monomials = detail::bounded_exponents(bounds);
  const bool found = detail::enumerate_candidates(
      f.field(), f.nvars(), monomials, std::uint64_t{1} << 22,
      [&](const XPoly& s) { return try_divide(f, s * s).has_value(); });
  return !found;
}

/// All normalized nonconstant divisors of f within per-variable degree
/// bounds, by exhaustive candidate enumeration. Tiny instances only.
inline std::vector<XPoly> brute_nontrivial_divisors(const XPoly& f,
                                                    std::uint64_t budget =
                                                        std::uint64_t{1} << 22) {
  if (f.is_zero())
    throw std::invalid_argument("brute_nontrivial_divisors: zero input");
  std::vector<std::uint32_t> bounds(f.nvars() + 1, 0);
  bounds[0] = static_cast<std::uint32_t>(std::max(f.deg_t(), 0));
  for (std::uint32_t i = 1; i <= f.nvars(); ++i)
    bounds[i] = static_cast<std::uint32_t>(std::max(f.deg_x(i), 0));
  const auto monomials = detail::bounded_exponents(bounds);
  std::vector<XPoly> out;
  detail::enumerate_candidates(f.field(), f.nvars(), monomials, budget,
                               [&](const XPoly& s) {
                                 if (try_divide(f, s).has_value())
                                   out.push_back(s);
                                 return false;
                               });
  return out;
}

/// Whether f splits into two nonconstant factors. Any such split has one
/// factor of total degree at most half, so the candidate space stays small.
inline bool brute_has_nontrivial_factorization(const XPoly& f) {
  const int tot = f.deg_total();
  if (tot < 2) return false;
  const auto half = static_cast<std::uint32_t>(tot / 2);
  std::vector<std::uint32_t> bounds(f.nvars() + 1, 0);
  bounds[0] = std::min(half, static_cast<std::uint32_t>(std::max(f.deg_t(), 0)));
  for (std::uint32_t i = 1; i <= f.nvars(); ++i)
    bounds[i] =
        std::min(half, static_cast<std::uint32_t>(std::max(f.deg_x(i), 0)));
  const auto monomials = detail::bounded_exponents(bounds, half);
  return detail::enumerate_candidates(
      f.field(), f.nvars(), monomials, std::uint64_t{1} << 22,
      [&](const XPoly& s) { return try_divide(f, s).has_value(); });
}

/// A divisor of f lying in F_q[t^p][x...] with positive t-degree, if any.
inline std::optional<XPoly> brute_divisor_in_tp(const XPoly& f) {
  const std::uint32_t p = f.field()->p();
  for (const auto& s : brute_nontrivial_divisors(f)) {
    if (s.deg_t() < 1) continue;
    bool all_multiples = true;
    for (const auto& [e, c] : s.terms())
      if (e[0] % p != 0) {
        all_multiples = false;
        break;
      }
    if (all_multiples) return s;
  }
  return std::nullopt;
}

}  // namespace sqfval
