#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqfval/xpoly.hpp"

namespace sqfval {

/// Parse failure with a 0-based character position.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument("at position " + std::to_string(pos) + ": " + msg),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

// Grammar: terms joined by + or -; a term is a '*'-joined product of factors;
// a factor is a coefficient literal (an enumeration index), t, or x/xN, each
// optionally raised by ^exp where exp is a number or the letter p.
class PolyParser {
 public:
  PolyParser(const FieldDescriptor* fd, const std::string& src)
      : fd_(fd), src_(src) {}

  XPoly parse(std::uint32_t nx) {
    XPoly acc(fd_, nx);
    skip_ws();
    if (eof()) throw ParseError("empty polynomial", pos_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = get() == '-';
    acc = acc + parse_term(nx, negate);
    skip_ws();
    while (!eof()) {
      const char op = get();
      if (op != '+' && op != '-')
        throw ParseError(std::string("expected '+' or '-', found '") + op + "'",
                         pos_ - 1);
      acc = acc + parse_term(nx, op == '-');
      skip_ws();
    }
    return acc;
  }

  /// Largest x index mentioned anywhere (bare x counts as x1), 0 if none.
  std::uint32_t scan_max_var() const {
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] != 'x') continue;
      std::size_t j = i + 1;
      std::uint32_t idx = 0;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
        idx = idx * 10 + static_cast<std::uint32_t>(src_[j] - '0');
        ++j;
      }
      if (j == i + 1) idx = 1;  // bare x
      best = std::max(best, idx);
    }
    return best;
  }

 private:
  XPoly parse_term(std::uint32_t nx, bool negate) {
    XPoly term = parse_factor(nx);
    skip_ws();
    while (!eof() && peek() == '*') {
      get();
      term = term * parse_factor(nx);
      skip_ws();
    }
    return negate ? -term : term;
  }

  XPoly parse_factor(std::uint32_t nx) {
    skip_ws();
    if (eof()) throw ParseError("expected a factor", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      const std::uint64_t v = parse_number();
      if (v >= fd_->q())
        throw ParseError("coefficient " + std::to_string(v) +
                             " is not below q = " + std::to_string(fd_->q()),
                         at);
      return XPoly::constant(fd_, nx, Fq::from_index(fd_, v));
    }
    if (c == 't') {
      get();
      const std::uint32_t e = parse_optional_exponent();
      return XPoly::monomial(fd_, nx, Fq::one(fd_), e, {});
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      get();
      std::uint32_t idx = 0;
      bool digits = false;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        idx = idx * 10 + static_cast<std::uint32_t>(get() - '0');
        digits = true;
      }
      if (!digits) idx = 1;
      if (idx < 1 || idx > nx)
        throw ParseError("variable x" + std::to_string(idx) +
                             " outside the declared " + std::to_string(nx) +
                             " variable(s)",
                         at);
      const std::uint32_t e = parse_optional_exponent();
      std::vector<std::uint32_t> ex(idx, 0);
      ex[idx - 1] = e;
      return XPoly::monomial(fd_, nx, Fq::one(fd_), 0, ex);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::uint32_t parse_optional_exponent() {
    skip_ws();
    if (eof() || peek() != '^') return 1;
    get();
    skip_ws();
    if (!eof() && peek() == 'p') {
      get();
      return fd_->p();
    }
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an exponent", pos_);
    const std::uint64_t e = parse_number();
    if (e > 4096) throw ParseError("exponent too large", pos_);
    return static_cast<std::uint32_t>(e);
  }

  std::uint64_t parse_number() {
    std::uint64_t v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(get() - '0');
      if (v > (std::uint64_t{1} << 40))
        throw ParseError("number too large", pos_);
    }
    return v;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char get() { return src_[pos_++]; }

  const FieldDescriptor* fd_;
  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse with an explicit variable count, or infer it (nx = 0 means "infer";
/// an x-free string infers to zero x variables).
inline XPoly parse_xpoly(const FieldDescriptor* fd, const std::string& src,
                         std::uint32_t nx) {
  detail::PolyParser parser(fd, src);
  return parser.parse(nx);
}
inline XPoly parse_xpoly(const Field& f, const std::string& src,
                         std::uint32_t nx) {
  return parse_xpoly(f.get(), src, nx);
}

inline XPoly parse_xpoly_infer(const FieldDescriptor* fd,
                               const std::string& src) {
  detail::PolyParser scanner(fd, src);
  const std::uint32_t nx = scanner.scan_max_var();
  detail::PolyParser parser(fd, src);
  return parser.parse(nx);
}
inline XPoly parse_xpoly_infer(const Field& f, const std::string& src) {
  return parse_xpoly_infer(f.get(), src);
}

inline TPoly parse_tpoly(const FieldDescriptor* fd, const std::string& src) {
  return parse_xpoly(fd, src, 0).to_tpoly();
}
inline TPoly parse_tpoly(const Field& f, const std::string& src) {
  return parse_tpoly(f.get(), src);
}

/// Canonical printing: every coefficient as its enumeration index, terms in
/// descending lexicographic monomial order, joined by " + ". Output re-parses
/// to an equal polynomial.
inline std::string to_string(const XPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    std::string mono;
    if (e[0] > 0) {
      mono += "t";
      if (e[0] > 1) mono += "^" + std::to_string(e[0]);
    }
    for (std::uint32_t i = 1; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += c.str();
    } else if (c.is_one()) {
      out += mono;
    } else {
      out += c.str() + "*" + mono;
    }
  }
  return out;
}

inline std::string to_string(const TPoly& u) {
  return to_string(XPoly::from_tpoly(u, 0));
}

inline std::string to_string(const CoefPoly& p) { return to_string(p.poly()); }

}  // namespace sqfval
