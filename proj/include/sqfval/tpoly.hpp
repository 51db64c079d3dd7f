#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfval/field.hpp"

namespace sqfval {

/// Element of F_q[t]. Dense coefficient vector, index i = coefficient of t^i,
/// normalized so the leading coefficient is nonzero (zero = empty vector).
class TPoly {
 public:
  explicit TPoly(const FieldDescriptor* fd) : fd_(fd) {
    if (fd_ == nullptr) throw std::invalid_argument("TPoly: null descriptor");
  }

  static TPoly zero(const FieldDescriptor* fd) { return TPoly(fd); }
  static TPoly zero(const Field& f) { return TPoly(f.get()); }

  static TPoly constant(const FieldDescriptor* fd, const Fq& c) {
    TPoly r(fd);
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
  }
  static TPoly constant(const Field& f, const Fq& c) {
    return constant(f.get(), c);
  }

  static TPoly one(const FieldDescriptor* fd) {
    return constant(fd, Fq::one(fd));
  }
  static TPoly one(const Field& f) { return one(f.get()); }

  /// The polynomial c * t^e.
  static TPoly monomial(const FieldDescriptor* fd, const Fq& c,
                        std::uint32_t e) {
    TPoly r(fd);
    if (!c.is_zero()) {
      r.c_.assign(e, Fq::zero(fd));
      r.c_.push_back(c);
    }
    return r;
  }

  static TPoly t(const FieldDescriptor* fd) {
    return monomial(fd, Fq::one(fd), 1);
  }
  static TPoly t(const Field& f) { return t(f.get()); }

  static TPoly from_coeffs(const FieldDescriptor* fd, std::vector<Fq> coeffs) {
    TPoly r(fd);
    r.c_ = std::move(coeffs);
    r.normalize();
    return r;
  }
  static TPoly from_coeffs(const Field& f, std::vector<Fq> coeffs) {
    return from_coeffs(f.get(), std::move(coeffs));
  }

  const FieldDescriptor* field() const { return fd_; }
  bool is_zero() const { return c_.empty(); }
  int deg() const {
    return c_.empty() ? kNegInfDeg : static_cast<int>(c_.size()) - 1;
  }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_unit() const { return c_.size() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Fq coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Fq::zero(fd_);
  }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq leading() const {
    if (c_.empty()) throw std::invalid_argument("TPoly: zero has no leading");
    return c_.back();
  }

  TPoly operator-() const {
    TPoly r(fd_);
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(-v);
    return r;
  }

  TPoly operator+(const TPoly& rhs) const {
    check_same(rhs);
    TPoly r(fd_);
    const std::size_t m = std::max(c_.size(), rhs.c_.size());
    r.c_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) r.c_.push_back(coeff(i) + rhs.coeff(i));
    r.normalize();
    return r;
  }

  TPoly operator-(const TPoly& rhs) const {
    check_same(rhs);
    TPoly r(fd_);
    const std::size_t m = std::max(c_.size(), rhs.c_.size());
    r.c_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) r.c_.push_back(coeff(i) - rhs.coeff(i));
    r.normalize();
    return r;
  }

  TPoly operator*(const TPoly& rhs) const {
    check_same(rhs);
    TPoly r(fd_);
    if (c_.empty() || rhs.c_.empty()) return r;
    r.c_.assign(c_.size() + rhs.c_.size() - 1, Fq::zero(fd_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < rhs.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + c_[i] * rhs.c_[j];
    }
    r.normalize();
    return r;
  }

  TPoly operator*(const Fq& s) const {
    TPoly r(fd_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(v * s);
    r.normalize();
    return r;
  }

  bool operator==(const TPoly& rhs) const {
    if (!fd_->compatible(*rhs.fd_)) return false;
    return c_ == rhs.c_;
  }
  bool operator!=(const TPoly& rhs) const { return !(*this == rhs); }

  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<TPoly, TPoly> divmod(const TPoly& div) const {
    check_same(div);
    if (div.is_zero()) throw std::invalid_argument("TPoly: division by zero");
    TPoly q(fd_);
    TPoly r = *this;
    const Fq lead_inv = div.leading().inv();
    const int dd = div.deg();
    if (r.deg() >= dd) q.c_.assign(static_cast<std::size_t>(r.deg() - dd) + 1,
                                   Fq::zero(fd_));
    while (r.deg() >= dd) {
      const std::size_t shift = r.c_.size() - div.c_.size();
      const Fq factor = r.c_.back() * lead_inv;
      q.c_[shift] = factor;
      for (std::size_t j = 0; j < div.c_.size(); ++j)
        r.c_[shift + j] = r.c_[shift + j] - factor * div.c_[j];
      r.normalize();
    }
    q.normalize();
    return {q, r};
  }

  bool divides(const TPoly& other) const {
    return other.divmod(*this).second.is_zero();
  }

  TPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
  }

  TPoly derivative() const {
    TPoly r(fd_);
    if (c_.size() <= 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i] * Fq::from_int(fd_, static_cast<long long>(i)));
    r.normalize();
    return r;
  }

  Fq evaluate(const Fq& x) const {
    Fq acc = Fq::zero(fd_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  TPoly pow(std::uint32_t e) const {
    TPoly acc = one(fd_);
    TPoly base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void check_same(const TPoly& rhs) const {
    if (!fd_->compatible(*rhs.fd_))
      throw std::invalid_argument("TPoly: operands from different fields");
  }

  const FieldDescriptor* fd_;
  std::vector<Fq> c_;
};

/// Monic greatest common divisor by Euclid's algorithm.
inline TPoly gcd_t(TPoly u, TPoly v) {
  if (u.is_zero() && v.is_zero())
    throw std::invalid_argument("gcd_t: both inputs zero");
  while (!v.is_zero()) {
    TPoly r = u.divmod(v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

/// If every exponent is divisible by p, the unique g with g^p = u.
inline std::optional<TPoly> pth_power_root(const TPoly& u) {
  const auto* fd = u.field();
  const std::uint32_t p = fd->p();
  if (u.is_zero()) return TPoly::zero(fd);
  const int d = u.deg();
  std::vector<Fq> root;
  root.reserve(static_cast<std::size_t>(d / static_cast<int>(p)) + 1);
  for (int i = 0; i <= d; ++i) {
    const Fq c = u.coeff(static_cast<std::size_t>(i));
    if (i % static_cast<int>(p) == 0) {
      root.push_back(c.pth_root());
    } else if (!c.is_zero()) {
      return std::nullopt;
    }
  }
  return TPoly::from_coeffs(fd, std::move(root));
}

}  // namespace sqfval
