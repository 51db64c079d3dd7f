#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfval/xpoly.hpp"

namespace sqfval {

// Carrier-ring glue: the determinant and discriminant code below is generic
// over F_q scalars, F_q[t] and F_q[x...] coefficients.

inline Fq ring_zero_like(const Fq& x) { return Fq::zero(x.field()); }
inline Fq ring_one_like(const Fq& x) { return Fq::one(x.field()); }
inline bool ring_is_zero(const Fq& x) { return x.is_zero(); }
inline Fq ring_exact_div(const Fq& a, const Fq& b) { return a / b; }
inline Fq ring_from_int(const Fq& like, long long v) {
  return Fq::from_int(like.field(), v);
}

inline TPoly ring_zero_like(const TPoly& x) { return TPoly::zero(x.field()); }
inline TPoly ring_one_like(const TPoly& x) { return TPoly::one(x.field()); }
inline bool ring_is_zero(const TPoly& x) { return x.is_zero(); }
inline TPoly ring_exact_div(const TPoly& a, const TPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw InternalError("ring_exact_div: remainder in F_q[t]");
  return q;
}
inline TPoly ring_from_int(const TPoly& like, long long v) {
  return TPoly::constant(like.field(), Fq::from_int(like.field(), v));
}

inline XPoly ring_zero_like(const XPoly& x) {
  return XPoly::zero(x.field(), x.nvars());
}
inline XPoly ring_one_like(const XPoly& x) {
  return XPoly::one(x.field(), x.nvars());
}
inline bool ring_is_zero(const XPoly& x) { return x.is_zero(); }
inline XPoly ring_exact_div(const XPoly& a, const XPoly& b) {
  return exact_div(a, b);
}
inline XPoly ring_from_int(const XPoly& like, long long v) {
  return XPoly::constant(like.field(), like.nvars(),
                         Fq::from_int(like.field(), v));
}

/// Fraction-free determinant (Bareiss elimination with row pivoting). Every
/// division is exact over an integral domain.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> m, const R& like) {
  const std::size_t n = m.size();
  if (n == 0) return ring_one_like(like);
  bool negate = false;
  R prev = ring_one_like(like);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && ring_is_zero(m[pivot][k])) ++pivot;
    if (pivot == n) return ring_zero_like(like);
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = ring_exact_div(num, prev);
      }
      m[i][k] = ring_zero_like(like);
    }
    prev = m[k][k];
  }
  R det = std::move(m[n - 1][n - 1]);
  return negate ? -det : det;
}

namespace detail {

// Sylvester matrix at the stated formal degrees: dg rows of f-coefficients,
// then df rows of g-coefficients, each written high-to-low and shifted.
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const std::vector<R>& f, int df,
                                             const std::vector<R>& g, int dg,
                                             const R& like) {
  const std::size_t n = static_cast<std::size_t>(df + dg);
  std::vector<std::vector<R>> m(n, std::vector<R>(n, ring_zero_like(like)));
  auto at = [&](const std::vector<R>& coeffs, int idx) {
    return idx >= 0 && idx < static_cast<int>(coeffs.size())
               ? coeffs[static_cast<std::size_t>(idx)]
               : ring_zero_like(like);
  };
  for (int r = 0; r < dg; ++r)
    for (int j = 0; j <= df; ++j) m[r][r + j] = at(f, df - j);
  for (int r = 0; r < df; ++r)
    for (int j = 0; j <= dg; ++j) m[dg + r][r + j] = at(g, dg - j);
  return m;
}

template <class R>
std::vector<std::vector<R>> drop_row_col(const std::vector<std::vector<R>>& m,
                                         std::size_t row, std::size_t col) {
  std::vector<std::vector<R>> out;
  out.reserve(m.size() - 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<R> r;
    r.reserve(m.size() - 1);
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Resultant at formal degrees (df, dg): the determinant of the Sylvester
/// matrix built with those degrees. Zero rows from a vanished polynomial are
/// allowed; that is what "formal" means.
template <class R>
R sylvester_resultant(const std::vector<R>& f, int df, const std::vector<R>& g,
                      int dg, const R& like) {
  if (df < 0 || dg < 0)
    throw std::invalid_argument("sylvester_resultant: negative formal degree");
  if (static_cast<int>(f.size()) > df + 1 ||
      static_cast<int>(g.size()) > dg + 1)
    throw std::invalid_argument(
        "sylvester_resultant: actual degree exceeds formal degree");
  return bareiss_determinant(detail::sylvester_matrix(f, df, g, dg, like),
                             like);
}

namespace detail {

template <class R>
std::vector<R> formal_derivative_coeffs(const std::vector<R>& f, int k,
                                        const R& like) {
  std::vector<R> d;
  d.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    R c = i < static_cast<int>(f.size()) ? f[static_cast<std::size_t>(i)]
                                         : ring_zero_like(like);
    d.push_back(c * ring_from_int(like, i));
  }
  return d;
}

inline bool disc_sign_flip(int k) { return (k * (k - 1) / 2) % 2 != 0; }

// Res(f, f') / delta_k by literal division; requires delta_k != 0.
template <class R>
R universal_disc_via_division(const std::vector<R>& deltas, int k,
                              const R& like) {
  auto d = formal_derivative_coeffs(deltas, k, like);
  R det = sylvester_resultant(deltas, k, d, k - 1, like);
  R quot = ring_exact_div(det, deltas[static_cast<std::size_t>(k)]);
  return disc_sign_flip(k) ? -quot : quot;
}

// Division-free route: every first-column entry of the Sylvester matrix is a
// multiple of delta_k, so expanding along that column factors delta_k out:
//   det S = delta_k * (M_00 + (-1)^(k-1) * k * M_(k-1,0)).
// The bracket is the universal quotient and evaluates even at delta_k = 0.
template <class R>
R universal_disc_via_cofactor(const std::vector<R>& deltas, int k,
                              const R& like) {
  auto d = formal_derivative_coeffs(deltas, k, like);
  auto S = sylvester_matrix(deltas, k, d, k - 1, like);
  R m00 = bareiss_determinant(drop_row_col(S, 0, 0), like);
  R mk0 = bareiss_determinant(
      drop_row_col(S, static_cast<std::size_t>(k - 1), 0), like);
  long long kk = (k % 2 == 0) ? -static_cast<long long>(k)
                              : static_cast<long long>(k);
  R quot = m00 + mk0 * ring_from_int(like, kk);
  return disc_sign_flip(k) ? -quot : quot;
}

}  // namespace detail

/// The universal degree-k discriminant expression evaluated at delta_0..delta_k.
/// One fixed integer-coefficient polynomial regardless of the carrier ring;
/// normalized so that D^2 = d1^2 - 4 d2 d0 and, for exact degree k, the value
/// equals lead^(2k-2) * prod (r_i - r_j)^2 over the roots.
template <class R>
R universal_disc(const std::vector<R>& deltas, int k, const R& like) {
  if (k < 1) throw std::invalid_argument("universal_disc: k < 1");
  if (static_cast<int>(deltas.size()) != k + 1)
    throw std::invalid_argument("universal_disc: need k+1 coefficients");
  if (k == 1) return ring_one_like(like);
  if (ring_is_zero(deltas[static_cast<std::size_t>(k)]))
    return detail::universal_disc_via_cofactor(deltas, k, like);
  return detail::universal_disc_via_division(deltas, k, like);
}

/// D^k of u in F_q[t] viewed at formal degree k (deg u <= k required).
inline Fq disc_univariate(const TPoly& u, int k) {
  if (k < 1) throw std::invalid_argument("disc_univariate: k < 1");
  if (u.deg() > k)
    throw std::invalid_argument("disc_univariate: degree exceeds k");
  const Fq like = Fq::zero(u.field());
  std::vector<Fq> deltas;
  deltas.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) deltas.push_back(u.coeff(static_cast<std::size_t>(i)));
  return universal_disc(deltas, k, like);
}

/// D^k_t of f in F_q[t][x...]: write f = sum delta_i(x) t^i and evaluate the
/// same universal expression with F_q[x...] coefficients. Commutes with every
/// substitution x := beta because the expression is carrier-independent.
inline CoefPoly disc_t(const XPoly& f, int k) {
  if (k < 1) throw std::invalid_argument("disc_t: k < 1");
  if (f.deg_t() > k)
    throw std::invalid_argument("disc_t: deg_t f exceeds k");
  const XPoly like = XPoly::zero(f.field(), f.nvars());
  std::vector<XPoly> deltas;
  deltas.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i)
    deltas.push_back(f.coeff_of_t(static_cast<std::uint32_t>(i)));
  return CoefPoly(universal_disc(deltas, k, like));
}

inline CoefPoly disc_t(const XPoly& f) {
  const int k = f.deg_t();
  if (k < 1) throw std::invalid_argument("disc_t: deg_t f < 1");
  return disc_t(f, k);
}

}  // namespace sqfval
