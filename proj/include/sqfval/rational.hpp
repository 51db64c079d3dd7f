#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqfval {

/// Exact rational on 64-bit terms; wide enough for every desk-scale count
/// here. Normalized: positive denominator, reduced by the gcd.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  double decimal() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-(const Rational& rhs) const {
    const __int128 n = static_cast<__int128>(num_) * rhs.den_ -
                       static_cast<__int128>(rhs.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * rhs.den_;
    return from_wide(n, d);
  }

  bool operator==(const Rational& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
  }
  bool operator!=(const Rational& rhs) const { return !(*this == rhs); }
  bool operator<=(const Rational& rhs) const {
    return static_cast<__int128>(num_) * rhs.den_ <=
           static_cast<__int128>(rhs.num_) * den_;
  }
  bool operator<(const Rational& rhs) const {
    return static_cast<__int128>(num_) * rhs.den_ <
           static_cast<__int128>(rhs.num_) * den_;
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 r = a % b;
      a = b;
      b = r;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("Rational: value out of 64-bit range");
    return Rational(static_cast<long long>(n), static_cast<long long>(d));
  }

  long long num_;
  long long den_;
};

inline Rational one_minus(const Rational& r) {
  return Rational(1, 1) - r;
}

}  // namespace sqfval
