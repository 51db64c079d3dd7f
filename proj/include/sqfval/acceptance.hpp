#pragma once

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include "sqfval/gen.hpp"
#include "sqfval/report.hpp"

namespace sqfval {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::int64_t ms_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

inline void strip_runtime(Json& j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto& [k, v] : j.items()) strip_runtime(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_runtime(v);
  }
}

// f = x(x+t) and f = x - t with their fixed hypothesis-breaking families.
inline std::pair<XPoly, SparseSpec> gcd_scenario(const FieldDescriptor* fd) {
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  return {x * x + x * t,
          SparseSpec({TPoly::t(fd)}, {TPoly::t(fd) * TPoly::t(fd)},
                     {TPoly::zero(fd)})};
}

inline std::pair<XPoly, SparseSpec> frobenius_scenario(
    const FieldDescriptor* fd) {
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  return {x - t, SparseSpec({TPoly::one(fd)},
                            {TPoly::monomial(fd, Fq::one(fd), fd->p())},
                            {TPoly::t(fd)})};
}

}  // namespace detail

/// Runs every acceptance criterion and returns one result per criterion.
/// All randomized batteries are seeded, so repeated runs are identical.
inline std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;

  // 1. No square-free value at all when the gcd hypothesis fails.
  {
    CriterionResult r{1, "counterexample pin: gcd(a,b) != 1", true, ""};
    for (std::uint64_t qv : {2, 3, 5, 7, 9}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      auto [f, spec] = detail::gcd_scenario(field.get());
      const CountReport rep = count_sparse(f, spec);
      if (rep.sqf_count != 0 || rep.runtime_ms >= 1000) {
        r.pass = false;
        r.detail += "q=" + std::to_string(qv) + " sqf=" +
                    std::to_string(rep.sqf_count) + " ms=" +
                    std::to_string(rep.runtime_ms) + "; ";
      }
    }
    if (r.pass) r.detail = "sqf_count = 0 for q in {2,3,5,7,9}, each < 1 s";
    out.push_back(r);
  }

  // 2. Frequency at most 1/q when b is a p-th power times a.
  {
    CriterionResult r{2, "counterexample pin: b/a in F_q(t^p)", true, ""};
    for (std::uint64_t qv : {4, 8, 9}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      auto [f, spec] = detail::frobenius_scenario(field.get());
      const CountReport rep = count_sparse(f, spec);
      const bool freq_ok = rep.sqf_count * field->q() <= rep.total;
      if (!freq_ok || rep.runtime_ms >= 1000) {
        r.pass = false;
        r.detail += "q=" + std::to_string(qv) + " sqf=" +
                    std::to_string(rep.sqf_count) + "/" +
                    std::to_string(rep.total) + "; ";
      }
    }
    if (r.pass) r.detail = "frequency <= 1/q for q in {4,8,9}, each < 1 s";
    out.push_back(r);
  }

  // 3. Discriminant-then-assign equals assign-then-discriminant, exactly.
  {
    CriterionResult r{3, "discriminant/assignment commutation", true, ""};
    std::uint64_t failures = 0;
    for (std::uint64_t qv : {5, 9}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      Rng rng(0x51C0FFEEULL + qv);
      for (int i = 0; i < 500; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
        const XPoly f = rng.nonzero_xpoly(fd, d, 4, 3, 1 + rng.below(6));
        int k = std::max(f.deg_t(), 1);
        if (rng.flip()) ++k;  // formal degree above the actual one
        std::vector<Fq> beta;
        for (std::uint32_t j = 0; j < d; ++j) beta.push_back(rng.element(fd));
        const Fq lhs = disc_t(f, k).evaluate(beta);
        const Fq rhs = disc_univariate(f.evaluate_x_scalars(beta), k);
        if (lhs != rhs) ++failures;
      }
    }
    r.pass = failures == 0;
    r.detail = "1000 randomized instances, " + std::to_string(failures) +
               " failure(s)";
    out.push_back(r);
  }

  // 4 and 5 share one randomized battery.
  bool superset_ok = true, nonzero_ok = true, degree_ok = true;
  std::string battery_detail;
  {
    std::uint64_t instances = 0, guaranteed = 0;
    for (std::uint64_t qv : {4, 5, 8, 9}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      Rng rng(0xBADC0DEULL + qv);
      for (int i = 0; i < 50; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
        const XPoly f =
            d == 1 ? rng.squarefree_xpoly(fd, 1, 2, 2, 1 + rng.below(5))
                   : rng.squarefree_xpoly(fd, 2, 2, 1, 1 + rng.below(5));
        const SparseSpec spec = rng.sparse_spec(fd, d, d == 1 ? 2 : 1);
        const CountReport rep = count_sparse(f, spec);
        ++instances;
        if (!rep.superset_check) superset_ok = false;
        if (rep.vp.conditions.overall) {
          ++guaranteed;
          if (rep.vp.P.is_zero()) nonzero_ok = false;
        }
        if (rep.vp.k >= 1 &&
            rep.vp.P.total_degree() > rep.vp.bounds.deg_bound)
          degree_ok = false;
      }
    }
    battery_detail = std::to_string(instances) + " instances (" +
                     std::to_string(guaranteed) + " with hypotheses holding)";
  }
  {
    CriterionResult r{4, "superset contract and nonzero guarantee",
                      superset_ok && nonzero_ok, battery_detail};
    out.push_back(r);
  }
  {
    CriterionResult r{5, "degree bound deg P <= deg_bound", true, ""};
    Field f5 = FieldDescriptor::make(5, 1);
    const auto* fd = f5.get();
    const XPoly f = XPoly::var_x(fd, 1, 1) * XPoly::var_x(fd, 1, 1) -
                    XPoly::var_t(fd, 1);
    const SparseSpec spec({TPoly::one(fd)}, {TPoly::t(fd)}, {TPoly::zero(fd)});
    const VanishingPoly vp = build_vanishing_poly(f, spec);
    const bool worked = vp.P.total_degree() == 4 && vp.bounds.deg_bound == 10;
    r.pass = degree_ok && worked;
    r.detail = "worked instance deg P = " +
               std::to_string(vp.P.total_degree()) + " <= " +
               std::to_string(vp.bounds.deg_bound) + "; battery " +
               (degree_ok ? "clean" : "violated");
    out.push_back(r);
  }

  // 6. Elementary zero-count bound.
  {
    CriterionResult r{6, "zero count bound deg * q^(d-1)", true, ""};
    std::uint64_t failures = 0;
    for (std::uint64_t qv : {3, 5}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      Rng rng(0x5EED5ULL + qv);
      for (int i = 0; i < 100; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(3));
        CoefPoly P = rng.coefpoly(fd, d, 3, 1 + rng.below(5));
        while (P.is_zero()) P = rng.coefpoly(fd, d, 3, 1 + rng.below(5));
        if (!schmidt_check(P).ok) ++failures;
      }
    }
    r.pass = failures == 0;
    r.detail = "200 random nonzero polynomials, " + std::to_string(failures) +
               " violation(s)";
    out.push_back(r);
  }

  // 7. The main estimate chain across a q sweep.
  SweepTable sweep_table;
  {
    CriterionResult r{7, "estimate chain 1 - freq <= deg_bound/q", true, ""};
    const auto start = std::chrono::steady_clock::now();
    sweep_table = frequency_sweep("x^2 + x - t", {"1"}, {"t"}, {"0"},
                                  {3, 4, 5, 7, 8, 9, 11, 13});
    const auto elapsed = detail::ms_since(start);
    bool rows_ok = sweep_table.rows.size() == 8;
    for (const auto& row : sweep_table.rows) {
      rows_ok = rows_ok && row.guaranteed && row.bound_ok &&
                row.report.superset_check &&
                row.report.vp.bounds.deg_bound == 10;
    }
    r.pass = rows_ok && elapsed < 10'000;
    r.detail = "8 rows, " + std::to_string(elapsed) + " ms";
    out.push_back(r);
  }

  // 8. Pinned exhaustive count.
  {
    CriterionResult r{8, "pinned count q=5, f=x^2-t, spec (1,t,0)", true, ""};
    Field f5 = FieldDescriptor::make(5, 1);
    const auto* fd = f5.get();
    const XPoly f = XPoly::var_x(fd, 1, 1) * XPoly::var_x(fd, 1, 1) -
                    XPoly::var_t(fd, 1);
    const SparseSpec spec({TPoly::one(fd)}, {TPoly::t(fd)}, {TPoly::zero(fd)});
    const CountReport rep = count_sparse(f, spec);
    r.pass = rep.sqf_count == 21 && rep.total == 25;
    r.detail = "sqf_count = " + std::to_string(rep.sqf_count) + "/25";
    out.push_back(r);
  }

  // 9. Monic-box disjoint decomposition, exact equality.
  {
    CriterionResult r{9, "monic box equals union of sparse families", true, ""};
    auto check = [&](std::uint64_t qv, std::uint32_t d,
                     std::vector<std::uint32_t> m) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      XPoly f = XPoly::zero(fd, d);
      if (d == 1) {
        f = XPoly::var_x(fd, 1, 1) * XPoly::var_x(fd, 1, 1) -
            XPoly::var_t(fd, 1);
      } else {
        f = XPoly::var_x(fd, 2, 1) * XPoly::var_x(fd, 2, 2) -
            XPoly::var_t(fd, 2);
      }
      const BoxReport rep = count_monic_box(f, m);
      if (!rep.decomposition_check) {
        r.pass = false;
        r.detail += "q=" + std::to_string(qv) + " direct=" +
                    std::to_string(rep.sqf_count) + " decomposed=" +
                    std::to_string(rep.decomposed_sum) + "; ";
      }
    };
    check(2, 1, {3});
    check(3, 1, {3});
    check(2, 2, {2, 2});
    if (r.pass) r.detail = "three configurations, all exactly equal";
    out.push_back(r);
  }

  // 10. Derivative-gcd testers agree with the brute divisor oracles.
  {
    CriterionResult r{10, "oracle equivalence for square-freeness", true, ""};
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t mismatches = 0, checked = 0;
    for (std::uint64_t qv : {2, 3}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      const auto elems = enumerate_field(fd);
      std::uint64_t count = 1;
      for (int i = 0; i < 7; ++i) count *= qv;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Fq> coeffs;
        std::uint64_t rem = idx;
        for (int i = 0; i < 7; ++i) {
          coeffs.push_back(elems[static_cast<std::size_t>(rem % qv)]);
          rem /= qv;
        }
        const TPoly u = TPoly::from_coeffs(fd, std::move(coeffs));
        ++checked;
        if (is_squarefree_t(u).is_squarefree != brute_squarefree_oracle(u))
          ++mismatches;
      }
    }
    {
      Field field = FieldDescriptor::make(2, 1);
      const auto* fd = field.get();
      const Fq one = Fq::one(fd);
      for (std::uint64_t mask = 1; mask < 512; ++mask) {
        XPoly f(fd, 1);
        for (int bit = 0; bit < 9; ++bit) {
          if (!(mask & (std::uint64_t{1} << bit))) continue;
          f.add_term({static_cast<std::uint32_t>(bit % 3),
                      static_cast<std::uint32_t>(bit / 3)},
                     one);
        }
        ++checked;
        if (is_squarefree_f(f).is_squarefree != brute_squarefree_oracle_f(f))
          ++mismatches;
      }
    }
    const auto elapsed = detail::ms_since(start);
    r.pass = mismatches == 0 && elapsed < 60'000;
    r.detail = std::to_string(checked) + " instances, " +
               std::to_string(mismatches) + " mismatch(es), " +
               std::to_string(elapsed) + " ms";
    out.push_back(r);
  }

  // 11. Field arithmetic core.
  {
    CriterionResult r{11, "p-th root inverts Frobenius; field axioms", true,
                      ""};
    for (std::uint64_t qv : {4, 8, 9, 16, 25, 27, 81}) {
      Field field = FieldDescriptor::from_spec(std::to_string(qv));
      const auto* fd = field.get();
      for (const auto& x : enumerate_field(fd)) {
        if (x.frobenius().pth_root() != x || x.pth_root().frobenius() != x) {
          r.pass = false;
          r.detail += "root/frobenius broken at q=" + std::to_string(qv) + "; ";
          break;
        }
      }
      Rng rng(0xF1E1DULL + qv);
      for (int i = 0; i < 1000; ++i) {
        const Fq a = rng.element(fd), b = rng.element(fd), c = rng.element(fd);
        const bool ok = (a + b) + c == a + (b + c) && a + b == b + a &&
                        (a * b) * c == a * (b * c) && a * b == b * a &&
                        a * (b + c) == a * b + a * c &&
                        (a + (-a)).is_zero() &&
                        (a.is_zero() || (a * a.inv()).is_one());
        if (!ok) {
          r.pass = false;
          r.detail += "axiom failure at q=" + std::to_string(qv) + "; ";
          break;
        }
      }
    }
    if (r.pass)
      r.detail = "exhaustive root identity and 1000 random triples per field";
    out.push_back(r);
  }

  // 12. Worker count cannot change any reported byte.
  {
    CriterionResult r{12, "determinism across worker counts", true, ""};
    HarnessOptions w1, w4;
    w1.workers = 1;
    w4.workers = 4;
    const std::vector<std::uint64_t> qs{3, 4, 5, 7, 8, 9, 11, 13};
    Json a = sweep_json("x^2 + x - t", {"1"}, {"t"}, {"0"},
                        frequency_sweep("x^2 + x - t", {"1"}, {"t"}, {"0"}, qs,
                                        w1));
    Json b = sweep_json("x^2 + x - t", {"1"}, {"t"}, {"0"},
                        frequency_sweep("x^2 + x - t", {"1"}, {"t"}, {"0"}, qs,
                                        w4));
    detail::strip_runtime(a);
    detail::strip_runtime(b);
    r.pass = a.dump() == b.dump();
    r.detail = r.pass ? "byte-identical JSON modulo runtime_ms"
                      : "reports differ";
    out.push_back(r);
  }

  return out;
}

/// One pass/fail line per criterion; returns whether everything passed.
inline bool print_acceptance(std::ostream& os) {
  const auto results = run_acceptance();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    os << "criterion " << (r.id < 10 ? "0" : "") << r.id << " "
       << (r.pass ? "[PASS]" : "[FAIL]") << " " << r.name;
    if (!r.detail.empty()) os << " -- " << r.detail;
    os << "\n";
  }
  os << (all ? "acceptance: all criteria passed"
             : "acceptance: FAILURES present")
     << "\n";
  return all;
}

}  // namespace sqfval
