#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sqfval/sparse.hpp"

namespace sqfval {

/// Deterministic source for the randomized batteries. mt19937_64 output is
/// pinned by the standard, so seeded runs reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }
  bool flip() { return (eng_() & 1) != 0; }

  Fq element(const FieldDescriptor* fd) {
    return Fq::from_index(fd, below(fd->q()));
  }

  Fq nonzero_element(const FieldDescriptor* fd) {
    return Fq::from_index(fd, 1 + below(fd->q() - 1));
  }

  TPoly tpoly(const FieldDescriptor* fd, int max_deg) {
    std::vector<Fq> coeffs;
    const int d = static_cast<int>(below(static_cast<std::uint64_t>(max_deg) + 1));
    coeffs.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) coeffs.push_back(element(fd));
    return TPoly::from_coeffs(fd, std::move(coeffs));
  }

  TPoly nonzero_tpoly(const FieldDescriptor* fd, int max_deg) {
    for (;;) {
      TPoly u = tpoly(fd, max_deg);
      if (!u.is_zero()) return u;
    }
  }

  /// Sparse random polynomial within per-variable exponent bounds.
  XPoly xpoly(const FieldDescriptor* fd, std::uint32_t nx, std::uint32_t max_t,
              std::uint32_t max_x, std::size_t terms) {
    XPoly f(fd, nx);
    for (std::size_t i = 0; i < terms; ++i) {
      XPoly::Exps e(nx + 1);
      e[0] = static_cast<std::uint32_t>(below(max_t + 1));
      for (std::uint32_t j = 1; j <= nx; ++j)
        e[j] = static_cast<std::uint32_t>(below(max_x + 1));
      f.add_term(e, element(fd));
    }
    return f;
  }

  XPoly nonzero_xpoly(const FieldDescriptor* fd, std::uint32_t nx,
                      std::uint32_t max_t, std::uint32_t max_x,
                      std::size_t terms) {
    for (;;) {
      XPoly f = xpoly(fd, nx, max_t, max_x, terms);
      if (!f.is_zero()) return f;
    }
  }

  /// A square-free polynomial, by rejection.
  XPoly squarefree_xpoly(const FieldDescriptor* fd, std::uint32_t nx,
                         std::uint32_t max_t, std::uint32_t max_x,
                         std::size_t terms) {
    for (;;) {
      XPoly f = nonzero_xpoly(fd, nx, max_t, max_x, terms);
      if (is_squarefree_f(f).is_squarefree) return f;
    }
  }

  /// A polynomial with no t at all, for zero-count experiments.
  CoefPoly coefpoly(const FieldDescriptor* fd, std::uint32_t nx,
                    std::uint32_t max_x, std::size_t terms) {
    return CoefPoly(xpoly(fd, nx, 0, max_x, terms));
  }

  SparseSpec sparse_spec(const FieldDescriptor* fd, std::uint32_t d,
                         int max_deg) {
    std::vector<TPoly> a, b, c;
    for (std::uint32_t i = 0; i < d; ++i) {
      a.push_back(tpoly(fd, max_deg));
      b.push_back(tpoly(fd, max_deg));
      c.push_back(tpoly(fd, max_deg));
    }
    return SparseSpec(std::move(a), std::move(b), std::move(c));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sqfval
