#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqfval/common.hpp"

namespace sqfval {

class FieldDescriptor;

/// Shared handle to a field descriptor. Field elements keep a raw pointer to
/// their descriptor, so the handle must outlive every element created from it.
using Field = std::shared_ptr<const FieldDescriptor>;

inline constexpr std::uint64_t kDefaultFieldCeiling = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, coefficient of t^i at index i, no trailing zeros.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int fp_deg(const FpPoly& a) {
  return a.empty() ? kNegInfDeg : static_cast<int>(a.size()) - 1;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  fp_trim(out);
  return out;
}

// Remainder of a modulo monic m.
inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
  fp_trim(a);
  const int dm = fp_deg(m);
  while (fp_deg(a) >= dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        std::uint64_t sub = std::uint64_t{lead} * m[j] % p;
        a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
      }
    }
    a.pop_back();
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_make_monic(FpPoly a, std::uint32_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = 1, base = a.back(), e = p - 2;  // Fermat
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
  return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, fp_make_monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_make_monic(a, p);
}

inline FpPoly fp_powmod(FpPoly a, std::uint64_t e, const FpPoly& m,
                        std::uint32_t p) {
  FpPoly result{1};
  a = fp_mod(std::move(a), m, p);
  while (e) {
    if (e & 1) result = fp_mod(fp_mul(result, a, p), m, p);
    a = fp_mod(fp_mul(a, a, p), m, p);
    e >>= 1;
  }
  return result;
}

// Irreducibility of a monic polynomial over F_p. Small degrees go through an
// exhaustive divisor search, larger ones through the x^(p^i) - x gcd criterion.
inline bool fp_is_irreducible(const FpPoly& m, std::uint32_t p) {
  const int n = fp_deg(m);
  if (n <= 0) return false;
  if (n == 1) return true;
  if (n <= 4) {
    for (int d = 1; 2 * d <= n; ++d) {
      std::uint64_t count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      for (std::uint64_t v = 0; v < count; ++v) {
        FpPoly cand(static_cast<std::size_t>(d) + 1, 0);
        std::uint64_t rem = v;
        for (int i = 0; i < d; ++i) {
          cand[static_cast<std::size_t>(i)] =
              static_cast<std::uint32_t>(rem % p);
          rem /= p;
        }
        cand[static_cast<std::size_t>(d)] = 1;
        if (fp_mod(m, cand, p).empty()) return false;
      }
    }
    return true;
  }
  // x^(p^j) mod m for j = 1..n by iterated p-th powers.
  const FpPoly x{0, 1};
  std::vector<FpPoly> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = fp_mod(x, m, p);
  for (int j = 1; j <= n; ++j)
    frob[static_cast<std::size_t>(j)] =
        fp_powmod(frob[static_cast<std::size_t>(j - 1)], p, m, p);
  auto minus_x_is_zero_mod = [&](const FpPoly& a) {
    FpPoly diff = a;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    fp_trim(diff);
    return diff.empty();
  };
  if (!minus_x_is_zero_mod(frob[static_cast<std::size_t>(n)])) return false;
  int rest = n;
  for (int r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    FpPoly diff = frob[static_cast<std::size_t>(n / r)];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    fp_trim(diff);
    if (fp_deg(fp_gcd(diff, m, p)) != 0) return false;
    while (rest % r == 0) rest /= r;
    r = 1;  // restart over the remaining prime factors
  }
  return true;
}

}  // namespace detail

/// A concrete finite field GF(p^n) with a fixed monic irreducible modulus.
/// Instances are immutable and created only through make()/from_spec(); the
/// modulus is the lexicographically smallest irreducible choice, so every
/// downstream count is reproducible without shipping tables.
class FieldDescriptor {
 public:
  static Field make(std::uint32_t p, std::uint32_t n,
                    std::uint64_t ceiling = kDefaultFieldCeiling) {
    if (!detail::is_prime_u32(p))
      throw std::invalid_argument("field_make: characteristic " +
                                  std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("field_make: extension degree < 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (q > ceiling / p)
        throw std::invalid_argument("field_make: p^n exceeds ceiling " +
                                    std::to_string(ceiling));
      q *= p;
    }
    detail::FpPoly modulus = smallest_irreducible(p, n);
    return Field(new FieldDescriptor(p, n, q, std::move(modulus)));
  }

  /// Accepts "p" (prime), "p^n", or a plain prime power such as "9".
  static Field from_spec(const std::string& spec,
                         std::uint64_t ceiling = kDefaultFieldCeiling) {
    auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
      if (s.empty()) throw std::invalid_argument("field spec: empty number");
      std::uint64_t v = 0;
      for (char c : s) {
        if (c < '0' || c > '9')
          throw std::invalid_argument("field spec: bad character in \"" + spec +
                                      "\"");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > (std::uint64_t{1} << 40))
          throw std::invalid_argument("field spec: number too large");
      }
      return v;
    };
    const auto caret = spec.find('^');
    if (caret != std::string::npos) {
      std::uint64_t p = parse_u64(spec.substr(0, caret));
      std::uint64_t n = parse_u64(spec.substr(caret + 1));
      if (p >= (std::uint64_t{1} << 31) || n == 0 || n > 64)
        throw std::invalid_argument("field spec: out of range");
      return make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n),
                  ceiling);
    }
    std::uint64_t q = parse_u64(spec);
    if (q < 2) throw std::invalid_argument("field spec: q must be at least 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    std::uint32_t n = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++n;
    }
    if (rest != 1)
      throw std::invalid_argument("field spec: " + spec +
                                  " is not a prime power");
    return make(static_cast<std::uint32_t>(p), n, ceiling);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  const detail::FpPoly& modulus() const { return modulus_; }

  std::string spec_string() const {
    if (n_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(n_);
  }

  bool compatible(const FieldDescriptor& other) const {
    if (this == &other) return true;
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }

  FieldDescriptor(const FieldDescriptor&) = delete;
  FieldDescriptor& operator=(const FieldDescriptor&) = delete;

 private:
  FieldDescriptor(std::uint32_t p, std::uint32_t n, std::uint64_t q,
                  detail::FpPoly modulus)
      : p_(p), n_(n), q_(q), modulus_(std::move(modulus)) {}

  // Candidates are scanned in radix-p order of the non-leading coefficients,
  // so the result is the lexicographically smallest monic irreducible.
  static detail::FpPoly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      detail::FpPoly cand(n + 1, 0);
      std::uint64_t rem = v;
      for (std::uint32_t i = 0; i < n; ++i) {
        cand[i] = static_cast<std::uint32_t>(rem % p);
        rem /= p;
      }
      cand[n] = 1;
      if (detail::fp_is_irreducible(cand, p)) return cand;
    }
    throw InternalError("no irreducible modulus found");  // unreachable
  }

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t q_;
  detail::FpPoly modulus_;
};

/// Element of GF(p^n): n residues mod p, coefficient of the generator^i at
/// index i. Immutable value type; operations refuse cross-field mixing.
class Fq {
 public:
  Fq(const FieldDescriptor* fd, std::vector<std::uint32_t> coeffs)
      : fd_(fd), c_(std::move(coeffs)) {
    if (fd_ == nullptr) throw std::invalid_argument("Fq: null descriptor");
    if (c_.size() != fd_->n())
      throw std::invalid_argument("Fq: wrong number of coefficients");
    for (auto v : c_)
      if (v >= fd_->p()) throw std::invalid_argument("Fq: residue out of range");
  }

  static Fq zero(const FieldDescriptor* fd) {
    return Fq(fd, std::vector<std::uint32_t>(fd->n(), 0));
  }
  static Fq zero(const Field& f) { return zero(f.get()); }

  static Fq one(const FieldDescriptor* fd) {
    std::vector<std::uint32_t> c(fd->n(), 0);
    c[0] = 1 % fd->p();
    return Fq(fd, std::move(c));
  }
  static Fq one(const Field& f) { return one(f.get()); }

  /// Element at position idx of the canonical enumeration (radix-p digits).
  static Fq from_index(const FieldDescriptor* fd, std::uint64_t idx) {
    if (idx >= fd->q())
      throw std::invalid_argument("Fq::from_index: index " +
                                  std::to_string(idx) + " not below q");
    std::vector<std::uint32_t> c(fd->n());
    for (std::uint32_t i = 0; i < fd->n(); ++i) {
      c[i] = static_cast<std::uint32_t>(idx % fd->p());
      idx /= fd->p();
    }
    return Fq(fd, std::move(c));
  }
  static Fq from_index(const Field& f, std::uint64_t idx) {
    return from_index(f.get(), idx);
  }

  /// Image of an integer in the prime subfield (v mod p).
  static Fq from_int(const FieldDescriptor* fd, long long v) {
    const long long p = fd->p();
    long long r = v % p;
    if (r < 0) r += p;
    std::vector<std::uint32_t> c(fd->n(), 0);
    c[0] = static_cast<std::uint32_t>(r);
    return Fq(fd, std::move(c));
  }
  static Fq from_int(const Field& f, long long v) { return from_int(f.get(), v); }

  const FieldDescriptor* field() const { return fd_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool is_zero() const {
    for (auto v : c_)
      if (v != 0) return false;
    return true;
  }
  bool is_one() const { return *this == one(fd_); }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = fd_->n(); i-- > 0;) idx = idx * fd_->p() + c_[i];
    return idx;
  }

  Fq operator-() const {
    std::vector<std::uint32_t> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      c[i] = c_[i] == 0 ? 0 : fd_->p() - c_[i];
    return Fq(fd_, std::move(c));
  }

  Fq operator+(const Fq& rhs) const {
    check_same(rhs);
    std::vector<std::uint32_t> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      std::uint32_t s = c_[i] + rhs.c_[i];
      c[i] = s >= fd_->p() ? s - fd_->p() : s;
    }
    return Fq(fd_, std::move(c));
  }

  Fq operator-(const Fq& rhs) const {
    check_same(rhs);
    std::vector<std::uint32_t> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      c[i] = c_[i] >= rhs.c_[i] ? c_[i] - rhs.c_[i]
                                : c_[i] + fd_->p() - rhs.c_[i];
    }
    return Fq(fd_, std::move(c));
  }

  Fq operator*(const Fq& rhs) const {
    check_same(rhs);
    const std::uint32_t p = fd_->p();
    const std::uint32_t n = fd_->n();
    if (n == 1) {
      std::uint64_t v = std::uint64_t{c_[0]} * rhs.c_[0] % p;
      return Fq(fd_, {static_cast<std::uint32_t>(v)});
    }
    std::vector<std::uint32_t> prod(2 * n - 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (c_[i] == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + std::uint64_t{c_[i]} * rhs.c_[j]) % p);
      }
    }
    const auto& m = fd_->modulus();
    for (std::uint32_t i = 2 * n - 2; i >= n; --i) {
      const std::uint32_t v = prod[i];
      if (v != 0) {
        for (std::uint32_t j = 0; j < n; ++j) {
          std::uint64_t sub = std::uint64_t{v} * m[j] % p;
          prod[i - n + j] =
              static_cast<std::uint32_t>((prod[i - n + j] + p - sub) % p);
        }
      }
      if (i == n) break;
    }
    prod.resize(n);
    return Fq(fd_, std::move(prod));
  }

  Fq pow(std::uint64_t e) const {
    Fq base = *this;
    Fq acc = one(fd_);
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  Fq inv() const {
    if (is_zero()) throw std::invalid_argument("Fq: inversion of zero");
    return pow(fd_->q() - 2);
  }

  Fq operator/(const Fq& rhs) const { return *this * rhs.inv(); }

  /// x -> x^p, the Frobenius automorphism.
  Fq frobenius() const { return pow(fd_->p()); }

  /// The unique p-th root, computed as x^(p^(n-1)).
  Fq pth_root() const {
    if (fd_->n() == 1) return *this;
    return pow(fd_->q() / fd_->p());
  }

  bool operator==(const Fq& rhs) const {
    return fd_->compatible(*rhs.fd_) && c_ == rhs.c_;
  }
  bool operator!=(const Fq& rhs) const { return !(*this == rhs); }

  std::string str() const { return std::to_string(index()); }

 private:
  void check_same(const Fq& rhs) const {
    if (!fd_->compatible(*rhs.fd_))
      throw std::invalid_argument("Fq: operands from different fields");
  }

  const FieldDescriptor* fd_;
  std::vector<std::uint32_t> c_;
};

/// All q elements, radix-p coefficient order. Deterministic and stable.
inline std::vector<Fq> enumerate_field(const FieldDescriptor* fd) {
  std::vector<Fq> out;
  out.reserve(static_cast<std::size_t>(fd->q()));
  for (std::uint64_t i = 0; i < fd->q(); ++i)
    out.push_back(Fq::from_index(fd, i));
  return out;
}
inline std::vector<Fq> enumerate_field(const Field& f) {
  return enumerate_field(f.get());
}

}  // namespace sqfval
