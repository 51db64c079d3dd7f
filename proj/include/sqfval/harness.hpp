#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sqfval/parse.hpp"
#include "sqfval/rational.hpp"
#include "sqfval/sparse.hpp"

namespace sqfval {

struct HarnessOptions {
  std::uint64_t max_evals = 10'000'000;  // sparse-count evaluation ceiling
  std::uint64_t max_box = 1'000'000;     // monic-box evaluation ceiling
  unsigned workers = 1;
  bool emit_grid = false;
};

/// One audited grid point: the scalar tuple, the value it produced, and the
/// two per-point verdicts.
struct GridRow {
  std::uint64_t index = 0;
  std::vector<std::uint64_t> beta;
  std::string value;
  bool sqf = false;
  bool p_zero = false;
};

struct CountReport {
  std::uint64_t total = 0;
  std::uint64_t sqf_count = 0;
  std::uint64_t p_zero_count = 0;
  Rational frequency;
  Rational error;
  bool bound_check = false;
  bool superset_check = false;
  VanishingPoly vp;
  std::int64_t runtime_ms = 0;
  std::vector<GridRow> grid;
};

namespace detail {

struct ChunkTally {
  std::uint64_t sqf = 0;
  std::uint64_t p_zero = 0;
  bool superset_ok = true;
  std::vector<GridRow> rows;
  std::exception_ptr error;
};

inline std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp,
                                   std::uint64_t ceiling,
                                   const std::string& who) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (v > ceiling / base)
      throw std::invalid_argument(who + ": " + std::to_string(base) + "^" +
                                  std::to_string(exp) +
                                  " evaluations exceed ceiling " +
                                  std::to_string(ceiling));
    v *= base;
  }
  return v;
}

}  // namespace detail

/// Exhaustive count of square-free values of f over the sparse family.
/// The scalar grid is enumerated in radix-q order with the first coordinate
/// most significant; the split across workers cannot change any output.
inline CountReport count_sparse(const XPoly& f, const SparseSpec& spec,
                                const HarnessOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (f.nvars() != spec.d)
    throw std::invalid_argument("count_sparse: f arity differs from spec.d");
  if (!is_squarefree_f(f).is_squarefree)
    throw std::invalid_argument("count_sparse: f is not square-free");
  const auto* fd = f.field();
  const std::uint64_t q = fd->q();
  const std::uint32_t width = 2 * spec.d;
  const std::uint64_t total =
      detail::checked_power(q, width, opts.max_evals, "count_sparse");

  VanishingPoly vp = build_vanishing_poly(f, spec);
  const auto elems = enumerate_field(fd);

  auto run_chunk = [&](std::uint64_t lo, std::uint64_t hi,
                       detail::ChunkTally& tally) {
    std::vector<Fq> beta(width, Fq::zero(fd));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rem = idx;
      for (std::uint32_t j = width; j-- > 0;) {
        beta[j] = elems[static_cast<std::size_t>(rem % q)];
        rem /= q;
      }
      const TPoly value = f.evaluate_x(spec.member(beta));
      const bool sqf = is_squarefree_t(value).is_squarefree;
      const bool p_zero = vp.P.evaluate(beta).is_zero();
      if (sqf) ++tally.sqf;
      if (p_zero) ++tally.p_zero;
      if (!sqf && !p_zero) tally.superset_ok = false;
      if (opts.emit_grid) {
        GridRow row;
        row.index = idx;
        row.beta.reserve(width);
        for (const auto& b : beta) row.beta.push_back(b.index());
        row.value = to_string(value);
        row.sqf = sqf;
        row.p_zero = p_zero;
        tally.rows.push_back(std::move(row));
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(
      std::max(1u, opts.workers), std::max<std::uint64_t>(total, 1)));
  std::vector<detail::ChunkTally> tallies(workers);
  if (workers == 1) {
    run_chunk(0, total, tallies[0]);
  } else {
    auto guarded = [&](std::uint64_t lo, std::uint64_t hi,
                       detail::ChunkTally& tally) {
      try {
        run_chunk(lo, hi, tally);
      } catch (...) {
        tally.error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
      pool.emplace_back(guarded, lo, hi, std::ref(tallies[w]));
    }
    for (auto& th : pool) th.join();
    for (const auto& t : tallies)
      if (t.error) std::rethrow_exception(t.error);
  }

  CountReport rep{0,  0,  0, Rational(), Rational(), false, false,
                  vp, 0, {}};
  rep.total = total;
  rep.superset_check = true;
  for (auto& t : tallies) {
    rep.sqf_count += t.sqf;
    rep.p_zero_count += t.p_zero;
    rep.superset_check = rep.superset_check && t.superset_ok;
    for (auto& r : t.rows) rep.grid.push_back(std::move(r));
  }
  rep.frequency = Rational(static_cast<long long>(rep.sqf_count),
                           static_cast<long long>(total));
  rep.error = one_minus(rep.frequency);
  rep.bound_check =
      rep.error <= Rational(vp.bounds.deg_bound, static_cast<long long>(q));

  // Two-step estimate chain; both inequalities are guaranteed when P != 0.
  if (!vp.P.is_zero()) {
    const std::uint64_t bad = total - rep.sqf_count;
    if (bad > rep.p_zero_count)
      throw InternalError("count_sparse: bad set is not inside the zero set");
    const std::uint64_t schmidt =
        static_cast<std::uint64_t>(std::max(vp.P.total_degree(), 0)) *
        (total / q);
    if (rep.p_zero_count > schmidt)
      throw InternalError("count_sparse: zero count exceeds deg(P) * q^(2d-1)");
  }

  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

struct BoxReport {
  std::vector<std::uint32_t> m;
  std::uint64_t total = 0;
  std::uint64_t sqf_count = 0;
  Rational frequency;
  std::uint64_t decomposed_sum = 0;
  bool decomposition_check = false;
  std::int64_t runtime_ms = 0;
};

/// Count square-free values over the monic box M_{m_1} x ... x M_{m_d} and
/// verify the disjoint decomposition into per-tail sparse families with
/// a_i = t, b_i = 1 and the first two coefficients of each c_i zeroed.
inline BoxReport count_monic_box(const XPoly& f,
                                 const std::vector<std::uint32_t>& m,
                                 const HarnessOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t d = f.nvars();
  if (m.size() != d)
    throw std::invalid_argument("count_monic_box: need one degree per variable");
  std::uint32_t msum = 0;
  for (auto mi : m) {
    if (mi < 2)
      throw std::invalid_argument("count_monic_box: degrees must be >= 2");
    msum += mi;
  }
  if (!is_squarefree_f(f).is_squarefree)
    throw std::invalid_argument("count_monic_box: f is not square-free");
  const auto* fd = f.field();
  const std::uint64_t q = fd->q();
  const std::uint64_t total =
      detail::checked_power(q, msum, opts.max_box, "count_monic_box");
  const auto elems = enumerate_field(fd);

  BoxReport rep;
  rep.m = m;
  rep.total = total;

  // Direct enumeration of the box.
  {
    std::vector<TPoly> u(d, TPoly::zero(fd));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rem = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        std::vector<Fq> coeffs;
        coeffs.reserve(m[i] + 1);
        for (std::uint32_t j = 0; j < m[i]; ++j) {
          coeffs.push_back(elems[static_cast<std::size_t>(rem % q)]);
          rem /= q;
        }
        coeffs.push_back(Fq::one(fd));
        u[i] = TPoly::from_coeffs(fd, std::move(coeffs));
      }
      if (is_squarefree_t(f.evaluate_x(u)).is_squarefree) ++rep.sqf_count;
    }
  }
  rep.frequency = Rational(static_cast<long long>(rep.sqf_count),
                           static_cast<long long>(total));

  // Decomposed path: sum the sparse counts over all tail classes.
  {
    std::uint32_t free_digits = msum - 2 * d;
    std::uint64_t classes = 1;
    for (std::uint32_t i = 0; i < free_digits; ++i) classes *= q;
    HarnessOptions sub = opts;
    sub.emit_grid = false;
    for (std::uint64_t cls = 0; cls < classes; ++cls) {
      std::uint64_t rem = cls;
      std::vector<TPoly> a, b, c;
      for (std::uint32_t i = 0; i < d; ++i) {
        std::vector<Fq> coeffs(m[i] + 1, Fq::zero(fd));
        for (std::uint32_t j = 2; j < m[i]; ++j) {
          coeffs[j] = elems[static_cast<std::size_t>(rem % q)];
          rem /= q;
        }
        coeffs[m[i]] = Fq::one(fd);
        a.push_back(TPoly::t(fd));
        b.push_back(TPoly::one(fd));
        c.push_back(TPoly::from_coeffs(fd, std::move(coeffs)));
      }
      const SparseSpec spec(std::move(a), std::move(b), std::move(c));
      rep.decomposed_sum += count_sparse(f, spec, sub).sqf_count;
    }
  }
  rep.decomposition_check = rep.decomposed_sum == rep.sqf_count;
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

struct SchmidtResult {
  std::uint64_t zeros = 0;
  std::uint64_t bound = 0;
  bool ok = false;
};

/// Exhaustive zero count of a nonzero polynomial against the elementary
/// bound deg(P) * q^(d-1).
inline SchmidtResult schmidt_check(const CoefPoly& P,
                                   std::uint64_t max_evals = 10'000'000) {
  if (P.is_zero())
    throw std::invalid_argument("schmidt_check: zero polynomial");
  const auto* fd = P.field();
  const std::uint64_t q = fd->q();
  const std::uint32_t d = P.nvars();
  const std::uint64_t total =
      detail::checked_power(q, d, max_evals, "schmidt_check");
  const auto elems = enumerate_field(fd);
  SchmidtResult res;
  std::vector<Fq> point(d, Fq::zero(fd));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    for (std::uint32_t j = d; j-- > 0;) {
      point[j] = elems[static_cast<std::size_t>(rem % q)];
      rem /= q;
    }
    if (P.evaluate(point).is_zero()) ++res.zeros;
  }
  res.bound = static_cast<std::uint64_t>(std::max(P.total_degree(), 0)) *
              (d >= 1 ? total / q : 1);
  res.ok = res.zeros <= res.bound;
  return res;
}

struct CounterexampleReport {
  CountReport gcd_scenario;        // f = x(x+t), spec (t, t^2, 0)
  CountReport frobenius_scenario;  // f = x - t,  spec (1, t^p, t)
  bool gcd_pass = false;        // no square-free value at all
  bool frobenius_pass = false;  // frequency <= 1/q
};

/// The two fixed hypothesis-failure scenarios.
inline CounterexampleReport run_counterexamples(const Field& field,
                                                const HarnessOptions& opts = {}) {
  const auto* fd = field.get();
  const TPoly zero = TPoly::zero(fd);
  const TPoly one = TPoly::one(fd);
  const TPoly t = TPoly::t(fd);

  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly f1 = x * x + x * t;  // x(x+t)
  const SparseSpec spec1({t}, {t * t}, {zero});

  const XPoly f2 = x - XPoly::var_t(fd, 1);  // x - t
  const SparseSpec spec2({one}, {TPoly::monomial(fd, Fq::one(fd), fd->p())},
                         {t});

  CounterexampleReport rep{count_sparse(f1, spec1, opts),
                           count_sparse(f2, spec2, opts), false, false};
  rep.gcd_pass = rep.gcd_scenario.sqf_count == 0;
  // frequency <= 1/q, exactly: sqf * q <= total.
  rep.frobenius_pass = rep.frobenius_scenario.sqf_count * fd->q() <=
                       rep.frobenius_scenario.total;
  return rep;
}

struct SweepRow {
  Field field;
  CountReport report;
  bool guaranteed = false;  // hypotheses hold, so the bound applies
  bool bound_ok = false;    // error <= deg_bound / q (only when guaranteed)
};

struct SweepTable {
  std::vector<SweepRow> rows;
  bool all_ok() const {
    for (const auto& r : rows) {
      if (!r.report.superset_check) return false;
      if (r.guaranteed && !r.bound_ok) return false;
    }
    return !rows.empty();
  }
};

/// Re-interpret the polynomial templates over each field in the list (the
/// exponent letter p resolves per field) and run the exhaustive count.
inline SweepTable frequency_sweep(const std::string& f_src,
                                  const std::vector<std::string>& a_src,
                                  const std::vector<std::string>& b_src,
                                  const std::vector<std::string>& c_src,
                                  const std::vector<std::uint64_t>& q_list,
                                  const HarnessOptions& opts = {}) {
  if (a_src.empty() || a_src.size() != b_src.size() ||
      a_src.size() != c_src.size())
    throw std::invalid_argument("frequency_sweep: a, b, c must share length");
  SweepTable table;
  for (const auto qv : q_list) {
    Field field = FieldDescriptor::from_spec(std::to_string(qv));
    const std::uint32_t d = static_cast<std::uint32_t>(a_src.size());
    const XPoly f = parse_xpoly(field, f_src, d);
    std::vector<TPoly> a, b, c;
    for (std::uint32_t i = 0; i < d; ++i) {
      a.push_back(parse_tpoly(field, a_src[i]));
      b.push_back(parse_tpoly(field, b_src[i]));
      c.push_back(parse_tpoly(field, c_src[i]));
    }
    SweepRow row{field, count_sparse(f, SparseSpec(a, b, c), opts), false,
                 false};
    row.guaranteed = row.report.vp.conditions.overall;
    row.bound_ok = row.guaranteed && row.report.bound_check;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sqfval
