#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfval/tpoly.hpp"

namespace sqfval {

/// Element of F_q[t][x_1..x_D]. Sparse map from exponent tuples to nonzero
/// coefficients; tuple slot 0 is the t-exponent, slots 1..D the x-exponents.
/// Keys are ordered lexicographically, which fixes a deterministic leading
/// term for division, normalization and printing.
class XPoly {
 public:
  using Exps = std::vector<std::uint32_t>;
  using TermMap = std::map<Exps, Fq>;

  XPoly(const FieldDescriptor* fd, std::uint32_t nx) : fd_(fd), nx_(nx) {
    if (fd_ == nullptr) throw std::invalid_argument("XPoly: null descriptor");
  }

  static XPoly zero(const FieldDescriptor* fd, std::uint32_t nx) {
    return XPoly(fd, nx);
  }
  static XPoly zero(const Field& f, std::uint32_t nx) {
    return XPoly(f.get(), nx);
  }

  static XPoly constant(const FieldDescriptor* fd, std::uint32_t nx,
                        const Fq& c) {
    XPoly r(fd, nx);
    if (!c.is_zero()) r.terms_.emplace(Exps(nx + 1, 0), c);
    return r;
  }
  static XPoly constant(const Field& f, std::uint32_t nx, const Fq& c) {
    return constant(f.get(), nx, c);
  }

  static XPoly one(const FieldDescriptor* fd, std::uint32_t nx) {
    return constant(fd, nx, Fq::one(fd));
  }
  static XPoly one(const Field& f, std::uint32_t nx) { return one(f.get(), nx); }

  /// c * t^et * x1^ex[0] * ... (ex may be shorter than the variable count).
  static XPoly monomial(const FieldDescriptor* fd, std::uint32_t nx, const Fq& c,
                        std::uint32_t et, const std::vector<std::uint32_t>& ex) {
    if (ex.size() > nx)
      throw std::invalid_argument("XPoly::monomial: too many exponents");
    XPoly r(fd, nx);
    if (c.is_zero()) return r;
    Exps e(nx + 1, 0);
    e[0] = et;
    for (std::size_t i = 0; i < ex.size(); ++i) e[i + 1] = ex[i];
    r.terms_.emplace(std::move(e), c);
    return r;
  }

  /// The variable x_i (1-based).
  static XPoly var_x(const FieldDescriptor* fd, std::uint32_t nx,
                     std::uint32_t i) {
    if (i < 1 || i > nx)
      throw std::invalid_argument("XPoly::var_x: variable index out of range");
    Exps ex(i, 0);
    ex[i - 1] = 1;
    return monomial(fd, nx, Fq::one(fd), 0, ex);
  }
  static XPoly var_x(const Field& f, std::uint32_t nx, std::uint32_t i) {
    return var_x(f.get(), nx, i);
  }

  static XPoly var_t(const FieldDescriptor* fd, std::uint32_t nx) {
    return monomial(fd, nx, Fq::one(fd), 1, {});
  }
  static XPoly var_t(const Field& f, std::uint32_t nx) {
    return var_t(f.get(), nx);
  }

  static XPoly from_tpoly(const TPoly& u, std::uint32_t nx) {
    XPoly r(u.field(), nx);
    for (int i = 0; i <= u.deg(); ++i) {
      const Fq c = u.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      Exps e(nx + 1, 0);
      e[0] = static_cast<std::uint32_t>(i);
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  const FieldDescriptor* field() const { return fd_; }
  std::uint32_t nvars() const { return nx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Exps(nx_ + 1, 0));
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Exps(nx_ + 1, 0) &&
           terms_.begin()->second.is_one();
  }

  Fq coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Fq::zero(fd_) : it->second;
  }

  /// Degree in one variable: slot 0 is t, slots 1..D are x_1..x_D.
  int deg_var(std::uint32_t slot) const {
    if (slot > nx_) throw std::invalid_argument("XPoly: unknown variable");
    if (terms_.empty()) return kNegInfDeg;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[slot]);
    return static_cast<int>(d);
  }
  int deg_t() const { return deg_var(0); }
  int deg_x(std::uint32_t i) const { return deg_var(i); }

  /// Total degree over all variables including t.
  int deg_total() const {
    if (terms_.empty()) return kNegInfDeg;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto v : e) s += v;
      d = std::max(d, s);
    }
    return static_cast<int>(d);
  }

  /// Total degree in the x variables only (coefficients in F_q[t]).
  int deg_xvec() const {
    if (terms_.empty()) return kNegInfDeg;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (std::uint32_t i = 1; i <= nx_; ++i) s += e[i];
      d = std::max(d, s);
    }
    return static_cast<int>(d);
  }

  XPoly operator-() const {
    XPoly r(fd_, nx_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  XPoly operator+(const XPoly& rhs) const {
    check_same(rhs);
    XPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
  }

  XPoly operator-(const XPoly& rhs) const {
    check_same(rhs);
    XPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
  }

  XPoly operator*(const XPoly& rhs) const {
    check_same(rhs);
    XPoly r(fd_, nx_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : rhs.terms_) {
        Exps e(nx_ + 1);
        for (std::size_t i = 0; i <= nx_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  XPoly operator*(const Fq& s) const {
    XPoly r(fd_, nx_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  XPoly operator*(const TPoly& u) const {
    return *this * from_tpoly(u, nx_);
  }

  bool operator==(const XPoly& rhs) const {
    if (!fd_->compatible(*rhs.fd_) || nx_ != rhs.nx_) return false;
    return terms_ == rhs.terms_;
  }
  bool operator!=(const XPoly& rhs) const { return !(*this == rhs); }

  /// Coefficient of slot^e as a polynomial with that variable cleared.
  XPoly coeff_of_var(std::uint32_t slot, std::uint32_t e) const {
    if (slot > nx_) throw std::invalid_argument("XPoly: unknown variable");
    XPoly r(fd_, nx_);
    for (const auto& [ex, c] : terms_) {
      if (ex[slot] != e) continue;
      Exps reduced = ex;
      reduced[slot] = 0;
      r.terms_.emplace(std::move(reduced), c);
    }
    return r;
  }

  /// Coefficient of t^i viewed in F_q[x...][t].
  XPoly coeff_of_t(std::uint32_t i) const { return coeff_of_var(0, i); }

  /// Formal partial derivative. Slot 0 is t.
  XPoly partial_derivative(std::uint32_t slot) const {
    if (slot > nx_) throw std::invalid_argument("XPoly: unknown variable");
    XPoly r(fd_, nx_);
    for (const auto& [e, c] : terms_) {
      if (e[slot] == 0) continue;
      const Fq f = c * Fq::from_int(fd_, static_cast<long long>(e[slot]));
      if (f.is_zero()) continue;
      Exps de = e;
      de[slot] -= 1;
      r.add_term(de, f);
    }
    return r;
  }

  /// Substitute x_i := point[i-1] in F_q[t]; collapses into F_q[t].
  TPoly evaluate_x(const std::vector<TPoly>& point) const {
    if (point.size() != nx_)
      throw std::invalid_argument("evaluate_x: point arity mismatch");
    // Power tables per variable up to the occurring exponents.
    std::vector<std::vector<TPoly>> powers(nx_);
    for (std::uint32_t i = 0; i < nx_; ++i)
      powers[i].push_back(TPoly::one(fd_));
    auto power = [&](std::uint32_t i, std::uint32_t e) -> const TPoly& {
      auto& tab = powers[i];
      while (tab.size() <= e) tab.push_back(tab.back() * point[i]);
      return tab[e];
    };
    TPoly acc = TPoly::zero(fd_);
    for (const auto& [e, c] : terms_) {
      TPoly term = TPoly::monomial(fd_, c, e[0]);
      for (std::uint32_t i = 1; i <= nx_; ++i)
        if (e[i] != 0) term = term * power(i - 1, e[i]);
      acc = acc + term;
    }
    return acc;
  }

  /// Substitute x_i := scalar point[i-1]; collapses into F_q[t].
  TPoly evaluate_x_scalars(const std::vector<Fq>& point) const {
    std::vector<TPoly> lifted;
    lifted.reserve(point.size());
    for (const auto& b : point) lifted.push_back(TPoly::constant(fd_, b));
    return evaluate_x(lifted);
  }

  /// The ring homomorphism fixing F_q[t] with x_i := images[i-1]; images live
  /// over a possibly different set of x variables.
  XPoly substitute_x(const std::vector<XPoly>& images) const {
    if (images.size() != nx_)
      throw std::invalid_argument("substitute_x: arity mismatch");
    std::uint32_t target_nx = nx_;
    if (!images.empty()) target_nx = images[0].nvars();
    for (const auto& g : images) {
      if (!fd_->compatible(*g.field()))
        throw std::invalid_argument("substitute_x: field mismatch");
      if (g.nvars() != target_nx)
        throw std::invalid_argument("substitute_x: images disagree on arity");
    }
    std::vector<std::vector<XPoly>> powers(nx_);
    for (std::uint32_t i = 0; i < nx_; ++i)
      powers[i].push_back(XPoly::one(fd_, target_nx));
    auto power = [&](std::uint32_t i, std::uint32_t e) -> const XPoly& {
      auto& tab = powers[i];
      while (tab.size() <= e) tab.push_back(tab.back() * images[i]);
      return tab[e];
    };
    XPoly acc(fd_, target_nx);
    for (const auto& [e, c] : terms_) {
      XPoly term = XPoly::monomial(fd_, target_nx, c, e[0], {});
      for (std::uint32_t i = 1; i <= nx_; ++i)
        if (e[i] != 0) term = term * power(i - 1, e[i]);
      acc = acc + term;
    }
    return acc;
  }

  /// Leading term under the lexicographic key order.
  const std::pair<const Exps, Fq>& leading_term() const {
    if (terms_.empty())
      throw std::invalid_argument("XPoly: zero has no leading term");
    return *terms_.rbegin();
  }

  /// Scaled so the lexicographically leading coefficient is one.
  XPoly normalized() const {
    if (terms_.empty()) return *this;
    return *this * leading_term().second.inv();
  }

  /// Reinterpret as F_q[t] if no x variable occurs.
  TPoly to_tpoly() const {
    std::vector<Fq> coeffs;
    for (const auto& [e, c] : terms_) {
      for (std::uint32_t i = 1; i <= nx_; ++i)
        if (e[i] != 0)
          throw std::invalid_argument("to_tpoly: x variables present");
      if (coeffs.size() <= e[0]) coeffs.resize(e[0] + 1, Fq::zero(fd_));
      coeffs[e[0]] = c;
    }
    return TPoly::from_coeffs(fd_, std::move(coeffs));
  }

  /// Same polynomial over a wider variable set (new variables unused).
  XPoly widened(std::uint32_t new_nx) const {
    if (new_nx < nx_) throw std::invalid_argument("widened: shrinking arity");
    XPoly r(fd_, new_nx);
    for (const auto& [e, c] : terms_) {
      Exps we(new_nx + 1, 0);
      for (std::size_t i = 0; i <= nx_; ++i) we[i] = e[i];
      r.terms_.emplace(std::move(we), c);
    }
    return r;
  }

  void add_term(const Exps& e, const Fq& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

 private:
  void check_same(const XPoly& rhs) const {
    if (!fd_->compatible(*rhs.fd_))
      throw std::invalid_argument("XPoly: operands from different fields");
    if (nx_ != rhs.nx_)
      throw std::invalid_argument("XPoly: operands disagree on variable count");
  }

  const FieldDescriptor* fd_;
  std::uint32_t nx_;
  TermMap terms_;
};

/// Quotient f/g when the division is exact, nullopt otherwise. Repeatedly
/// cancels the lexicographic leading term; exactness makes each step valid.
inline std::optional<XPoly> try_divide(const XPoly& f, const XPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("try_divide: division by zero");
  XPoly r = f;
  XPoly q(f.field(), f.nvars());
  const auto& glead = g.leading_term();
  const Fq glead_inv = glead.second.inv();
  while (!r.is_zero()) {
    const auto& rlead = r.leading_term();
    XPoly::Exps e(rlead.first.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (rlead.first[i] < glead.first[i]) return std::nullopt;
      e[i] = rlead.first[i] - glead.first[i];
    }
    const Fq c = rlead.second * glead_inv;
    XPoly::Exps ex(e.begin() + 1, e.end());
    XPoly qterm = XPoly::monomial(f.field(), f.nvars(), c, e[0], ex);
    q = q + qterm;
    r = r - qterm * g;
  }
  return q;
}

/// Exact division; a nonzero remainder is an internal identity violation.
inline XPoly exact_div(const XPoly& f, const XPoly& g) {
  auto q = try_divide(f, g);
  if (!q) throw InternalError("exact_div: division not exact");
  return *q;
}

namespace detail {

// lc(B)^j * A - style pseudo-remainder of A by B in the variable slot.
// Division-free: each round multiplies by the leading coefficient of B.
inline XPoly pseudo_rem(XPoly A, const XPoly& B, std::uint32_t slot) {
  const int db = B.deg_var(slot);
  if (db < 0) throw std::invalid_argument("pseudo_rem: zero divisor");
  const XPoly lcB = B.coeff_of_var(slot, static_cast<std::uint32_t>(db));
  while (!A.is_zero()) {
    const int da = A.deg_var(slot);
    if (da < db) break;
    const XPoly lcA = A.coeff_of_var(slot, static_cast<std::uint32_t>(da));
    XPoly shift = XPoly::one(A.field(), A.nvars());
    {
      XPoly::Exps e(A.nvars() + 1, 0);
      e[slot] = static_cast<std::uint32_t>(da - db);
      shift = XPoly::monomial(A.field(), A.nvars(), Fq::one(A.field()), e[0],
                              XPoly::Exps(e.begin() + 1, e.end()));
    }
    A = A * lcB - B * lcA * shift;
  }
  return A;
}

}  // namespace detail

XPoly gcd_multi(const XPoly& f, const XPoly& g);

namespace detail {

// Content of f with respect to one variable slot: gcd of its coefficients.
inline XPoly content_of_var(const XPoly& f, std::uint32_t slot) {
  const int d = f.deg_var(slot);
  if (d < 0) return XPoly::zero(f.field(), f.nvars());
  XPoly acc = XPoly::zero(f.field(), f.nvars());
  for (int e = 0; e <= d; ++e) {
    const XPoly c = f.coeff_of_var(slot, static_cast<std::uint32_t>(e));
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? c.normalized() : gcd_multi(acc, c);
    if (acc.is_one()) break;
  }
  return acc;
}

}  // namespace detail

/// Greatest common divisor in F_q[t][x...], normalized so the lexicographic
/// leading coefficient is one. Primitive polynomial remainder sequences with
/// content recursion over the variables.
inline XPoly gcd_multi(const XPoly& f, const XPoly& g) {
  if (!f.field()->compatible(*g.field()) || f.nvars() != g.nvars())
    throw std::invalid_argument("gcd_multi: incompatible operands");
  if (f.is_zero() && g.is_zero())
    throw std::invalid_argument("gcd_multi: both inputs zero");
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();

  // Main variable: the highest slot occurring in either operand.
  int slot = -1;
  for (std::uint32_t s = f.nvars() + 1; s-- > 0;) {
    if (f.deg_var(s) > 0 || g.deg_var(s) > 0) {
      slot = static_cast<int>(s);
      break;
    }
  }
  if (slot < 0) return XPoly::one(f.field(), f.nvars());  // both constants

  const auto v = static_cast<std::uint32_t>(slot);
  const XPoly cf = detail::content_of_var(f, v);
  const XPoly cg = detail::content_of_var(g, v);
  const XPoly c = gcd_multi(cf, cg);

  XPoly A = exact_div(f, cf);
  XPoly B = exact_div(g, cg);
  if (A.deg_var(v) < B.deg_var(v)) std::swap(A, B);

  XPoly pp = XPoly::one(f.field(), f.nvars());
  while (true) {
    if (B.deg_var(v) <= 0) {
      // B is v-free and nonzero, so the primitive parts are coprime.
      break;
    }
    XPoly R = detail::pseudo_rem(A, B, v);
    if (R.is_zero()) {
      pp = exact_div(B, detail::content_of_var(B, v));
      break;
    }
    A = std::move(B);
    B = exact_div(R, detail::content_of_var(R, v));
  }
  return (c * pp).normalized();
}

/// If every exponent in every variable is divisible by p, the unique g with
/// g^p = f (coefficients get p-th roots); otherwise nullopt.
inline std::optional<XPoly> pth_power_split(const XPoly& f) {
  const std::uint32_t p = f.field()->p();
  XPoly r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    XPoly::Exps re(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % p != 0) return std::nullopt;
      re[i] = e[i] / p;
    }
    r.add_term(re, c.pth_root());
  }
  return r;
}

/// Content in F_q[t] (monic gcd of the x-monomial coefficients) and the
/// primitive part, with f = content * primitive.
inline std::pair<TPoly, XPoly> content_and_primitive(const XPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("content_and_primitive: zero input");
  // Group terms by their x-part into F_q[t] coefficients.
  std::map<XPoly::Exps, TPoly> groups;
  for (const auto& [e, c] : f.terms()) {
    XPoly::Exps xpart(e.begin() + 1, e.end());
    auto it = groups.try_emplace(std::move(xpart), TPoly::zero(f.field())).first;
    it->second = it->second + TPoly::monomial(f.field(), c, e[0]);
  }
  TPoly content = TPoly::zero(f.field());
  for (const auto& [xe, u] : groups)
    content = content.is_zero() ? u.monic() : gcd_t(content, u);
  XPoly primitive(f.field(), f.nvars());
  for (const auto& [xe, u] : groups) {
    auto [quot, rem] = u.divmod(content);
    if (!rem.is_zero())
      throw InternalError("content_and_primitive: content does not divide");
    for (int i = 0; i <= quot.deg(); ++i) {
      const Fq c = quot.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      XPoly::Exps e(f.nvars() + 1);
      e[0] = static_cast<std::uint32_t>(i);
      for (std::size_t j = 0; j < xe.size(); ++j) e[j + 1] = xe[j];
      primitive.add_term(e, c);
    }
  }
  return {content, primitive};
}

/// Element of F_q[x_1..x_D]: an XPoly guaranteed to be free of t.
class CoefPoly {
 public:
  explicit CoefPoly(XPoly p) : p_(std::move(p)) {
    if (!p_.is_zero() && p_.deg_t() > 0)
      throw std::invalid_argument("CoefPoly: t occurs");
  }

  static CoefPoly zero(const FieldDescriptor* fd, std::uint32_t nx) {
    return CoefPoly(XPoly::zero(fd, nx));
  }

  const XPoly& poly() const { return p_; }
  const FieldDescriptor* field() const { return p_.field(); }
  std::uint32_t nvars() const { return p_.nvars(); }
  bool is_zero() const { return p_.is_zero(); }
  int total_degree() const { return p_.deg_total(); }

  Fq evaluate(const std::vector<Fq>& point) const {
    if (point.size() != p_.nvars())
      throw std::invalid_argument("CoefPoly::evaluate: arity mismatch");
    std::vector<std::vector<Fq>> powers(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
      powers[i].push_back(Fq::one(p_.field()));
    auto power = [&](std::size_t i, std::uint32_t e) -> const Fq& {
      auto& tab = powers[i];
      while (tab.size() <= e) tab.push_back(tab.back() * point[i]);
      return tab[e];
    };
    Fq acc = Fq::zero(p_.field());
    for (const auto& [e, c] : p_.terms()) {
      Fq term = c;
      for (std::uint32_t i = 1; i < e.size(); ++i)
        if (e[i] != 0) term = term * power(i - 1, e[i]);
      acc = acc + term;
    }
    return acc;
  }

  bool operator==(const CoefPoly& rhs) const { return p_ == rhs.p_; }
  bool operator!=(const CoefPoly& rhs) const { return p_ != rhs.p_; }

 private:
  XPoly p_;
};

}  // namespace sqfval
