#include "sqfval/sparse.hpp"

#include <functional>

#include "gtest/gtest.h"
#include "sqfval/gen.hpp"
#include "sqfval/parse.hpp"

using namespace sqfval;

namespace {

struct Ctx {
  Field field;
  const FieldDescriptor* fd;
  XPoly x;
  XPoly t;
  explicit Ctx(const char* spec)
      : field(FieldDescriptor::from_spec(spec)),
        fd(field.get()),
        x(XPoly::var_x(fd, 1, 1)),
        t(XPoly::var_t(fd, 1)) {}
  TPoly tp_zero() const { return TPoly::zero(fd); }
  TPoly tp_one() const { return TPoly::one(fd); }
  TPoly tp_t() const { return TPoly::t(fd); }
};

void for_all_beta(const FieldDescriptor* fd, std::uint32_t width,
                  const std::function<void(const std::vector<Fq>&)>& visit) {
  const auto elems = enumerate_field(fd);
  const std::uint64_t q = fd->q();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < width; ++i) total *= q;
  std::vector<Fq> beta(width, Fq::zero(fd));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    for (std::uint32_t j = width; j-- > 0;) {
      beta[j] = elems[static_cast<std::size_t>(rem % q)];
      rem /= q;
    }
    visit(beta);
  }
}

}  // namespace

TEST(SparseSpecType, NormAndValidation) {
  Ctx s("5");
  const SparseSpec spec({s.tp_one()}, {s.tp_t()}, {s.tp_zero()});
  EXPECT_EQ(spec.norm(), 1);
  const SparseSpec flat({s.tp_one()}, {s.tp_zero()}, {s.tp_zero()});
  EXPECT_EQ(flat.norm(), 0);
  EXPECT_THROW(SparseSpec({}, {}, {}), std::invalid_argument);
  EXPECT_THROW(SparseSpec({s.tp_one()}, {}, {s.tp_zero()}),
               std::invalid_argument);
}

TEST(BuildPsi, PinnedImages) {
  Ctx s("5");
  // f = x, (1, t, 0) -> x1 + t x2.
  const SparseSpec spec1({s.tp_one()}, {s.tp_t()}, {s.tp_zero()});
  const XPoly expect1 = XPoly::var_x(s.fd, 2, 1) +
                        XPoly::var_x(s.fd, 2, 2) * s.tp_t();
  EXPECT_EQ(build_psi(s.x, spec1), expect1);

  // f = x(x+t), (t, t^2, 0) -> t^2 (x1 + t x2)(x1 + t x2 + 1).
  const XPoly f2 = s.x * (s.x + s.t);
  const SparseSpec spec2({s.tp_t()}, {s.tp_t() * s.tp_t()}, {s.tp_zero()});
  const XPoly lin = XPoly::var_x(s.fd, 2, 1) +
                    XPoly::var_x(s.fd, 2, 2) * s.tp_t();
  const XPoly t2 = XPoly::var_t(s.fd, 2);
  EXPECT_EQ(build_psi(f2, spec2),
            t2 * t2 * lin * (lin + XPoly::one(s.fd, 2)));

  // f = x^2 - t, (1, t, 0) -> x1^2 + 2 t x1 x2 + t^2 x2^2 - t.
  const XPoly f3 = s.x * s.x - s.t;
  const XPoly got = build_psi(f3, spec1);
  EXPECT_EQ(got, lin * lin - t2);
  EXPECT_THROW(build_psi(XPoly::var_x(s.fd, 2, 1), spec1),
               std::invalid_argument);
}

TEST(BuildPsi, EvaluationCoherenceExhaustively) {
  for (const char* spec_str : {"4", "5", "9"}) {
    auto field = FieldDescriptor::from_spec(spec_str);
    const auto* fd = field.get();
    Rng rng(73);
    for (int trial = 0; trial < 6; ++trial) {
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
      const XPoly f = rng.nonzero_xpoly(fd, d, 2, 2, 1 + rng.below(4));
      const SparseSpec spec = rng.sparse_spec(fd, d, 2);
      const XPoly sub = build_psi(f, spec);
      for_all_beta(fd, 2 * d, [&](const std::vector<Fq>& beta) {
        EXPECT_EQ(sub.evaluate_x_scalars(beta),
                  f.evaluate_x(spec.member(beta)));
      });
    }
  }
}

TEST(Conditions, PinnedHypothesisChecks) {
  Ctx s("5");
  const XPoly f = s.x * (s.x + s.t);
  // gcd(t, t^2) = t: first condition fails.
  const auto rep1 = validate_conditions(
      f, SparseSpec({s.tp_t()}, {s.tp_t() * s.tp_t()}, {s.tp_zero()}));
  EXPECT_FALSE(rep1.entries[0].gcd_ok);
  EXPECT_FALSE(rep1.overall);

  // b = t^p: the derivative criterion sees b' = 0.
  const TPoly tp = TPoly::monomial(s.fd, Fq::one(s.field), 5);
  const auto rep2 =
      validate_conditions(f, SparseSpec({s.tp_one()}, {tp}, {s.tp_zero()}));
  EXPECT_TRUE(rep2.entries[0].gcd_ok);
  EXPECT_FALSE(rep2.entries[0].branch2_ok);

  // b = t^kappa with kappa not divisible by p.
  const TPoly tk = TPoly::monomial(s.fd, Fq::one(s.field), 3);
  const auto rep3 =
      validate_conditions(f, SparseSpec({s.tp_one()}, {tk}, {s.tp_zero()}));
  EXPECT_TRUE(rep3.entries[0].gcd_ok);
  EXPECT_TRUE(rep3.entries[0].branch2_ok);
  EXPECT_TRUE(rep3.overall);

  // a = b = 0 never satisfies the gcd condition.
  const auto rep4 = validate_conditions(
      f, SparseSpec({s.tp_zero()}, {s.tp_zero()}, {s.tp_one()}));
  EXPECT_FALSE(rep4.entries[0].gcd_ok);
  EXPECT_FALSE(rep4.overall);
}

TEST(Conditions, LargeCharacteristicBranch) {
  // p = 11 > C(N) = 0*1 + 0 = 0 for constant data, so branch 1 carries.
  auto f11 = FieldDescriptor::make(11, 1);
  const auto* fd = f11.get();
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const auto rep = validate_conditions(
      x, SparseSpec({TPoly::one(f11)}, {TPoly::one(f11)}, {TPoly::zero(f11)}));
  EXPECT_TRUE(rep.entries[0].branch1_ok);
  EXPECT_FALSE(rep.entries[0].branch2_ok);  // b/a = 1 is constant
  EXPECT_TRUE(rep.overall);
}

TEST(Bounds, MinimalConstantsExactly) {
  Ctx s("5");
  const XPoly f = s.x * s.x - s.t;
  const SparseSpec spec({s.tp_one()}, {s.tp_t()}, {s.tp_zero()});
  const BoundSet b = compute_bounds(f, spec);
  EXPECT_EQ(b.char_bound, 3);   // 1*2 + 1
  EXPECT_EQ(b.deg_bound, 10);   // (2*3 - 1) * 2
  EXPECT_EQ(b.cap, 2);

  // f = x with a constant family: the formula instance (2*0 - 1) * 1.
  const BoundSet b2 = compute_bounds(
      s.x, SparseSpec({s.tp_one()}, {s.tp_zero()}, {s.tp_zero()}));
  EXPECT_EQ(b2.char_bound, 0);
  EXPECT_EQ(b2.deg_bound, -1);
}

TEST(VanishingPoly, ConstantForLinearInT) {
  Ctx s("5");
  const XPoly f = s.x - s.t;
  const SparseSpec spec({s.tp_one()}, {s.tp_zero()}, {s.tp_zero()});
  const VanishingPoly vp = build_vanishing_poly(f, spec);
  EXPECT_EQ(vp.k, 1);
  // P = delta_1 * D^1 = -1, never vanishing.
  EXPECT_EQ(vp.P.poly(),
            XPoly::constant(s.fd, 2, Fq::from_int(s.fd, -1)));
  for_all_beta(s.fd, 2, [&](const std::vector<Fq>& beta) {
    EXPECT_FALSE(vp.P.evaluate(beta).is_zero());
    EXPECT_TRUE(is_squarefree_t(f.evaluate_x(spec.member(beta))).is_squarefree);
  });
}

TEST(VanishingPoly, WorkedQuadraticInstance) {
  Ctx s("7");
  const XPoly f = s.x * s.x - s.t;
  const SparseSpec spec({s.tp_one()}, {s.tp_t()}, {s.tp_zero()});
  const VanishingPoly vp = build_vanishing_poly(f, spec);
  EXPECT_EQ(vp.k, 2);
  // P = x2^2 (1 - 4 x1 x2), exactly, in the fixed normalization.
  const XPoly x1 = XPoly::var_x(s.fd, 2, 1);
  const XPoly x2 = XPoly::var_x(s.fd, 2, 2);
  const XPoly expected =
      x2 * x2 * (XPoly::one(s.fd, 2) - x1 * x2 * Fq::from_index(s.field, 4));
  EXPECT_EQ(vp.P.poly(), expected);
  EXPECT_EQ(vp.P.total_degree(), 4);
  EXPECT_LE(vp.P.total_degree(), vp.bounds.deg_bound);
  EXPECT_TRUE(vp.conditions.overall);
}

TEST(VanishingPoly, ConstructedEvenWhenHypothesesFail) {
  Ctx s("3");
  const XPoly f = s.x * (s.x + s.t);
  const SparseSpec spec({s.tp_t()}, {s.tp_t() * s.tp_t()}, {s.tp_zero()});
  const VanishingPoly vp = build_vanishing_poly(f, spec);
  EXPECT_FALSE(vp.conditions.overall);
  // The superset contract still holds pointwise.
  for_all_beta(s.fd, 2, [&](const std::vector<Fq>& beta) {
    const TPoly value = f.evaluate_x(spec.member(beta));
    if (!is_squarefree_t(value).is_squarefree) {
      EXPECT_TRUE(vp.P.evaluate(beta).is_zero());
    }
  });
}

TEST(VanishingPoly, TFreeDegenerateCase) {
  // f = x with spec (1, 1, 0): the substituted polynomial is x1 + x2 with no
  // t, and its zero set is exactly the non-square-free (zero-valued) set.
  Ctx s("5");
  const SparseSpec spec({s.tp_one()}, {s.tp_one()}, {s.tp_zero()});
  const VanishingPoly vp = build_vanishing_poly(s.x, spec);
  EXPECT_EQ(vp.k, 0);
  EXPECT_TRUE(vp.conditions.overall);  // p = 5 > C(N) = 0
  EXPECT_FALSE(vp.P.is_zero());
  for_all_beta(s.fd, 2, [&](const std::vector<Fq>& beta) {
    const TPoly value = s.x.evaluate_x(spec.member(beta));
    EXPECT_EQ(is_squarefree_t(value).is_squarefree,
              !vp.P.evaluate(beta).is_zero());
  });
}

TEST(VanishingPoly, RejectsNonSquarefreeInput) {
  Ctx s("5");
  const XPoly f = (s.x + s.t) * (s.x + s.t);
  const SparseSpec spec({s.tp_one()}, {s.tp_t()}, {s.tp_zero()});
  EXPECT_THROW(build_vanishing_poly(f, spec), std::invalid_argument);
}

TEST(VanishingPoly, NonzeroGuaranteeBattery) {
  for (const char* spec_str : {"4", "5", "8", "9"}) {
    auto field = FieldDescriptor::from_spec(spec_str);
    const auto* fd = field.get();
    Rng rng(79);
    int guaranteed_seen = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
      const XPoly f =
          d == 1 ? rng.squarefree_xpoly(fd, 1, 2, 2, 1 + rng.below(5))
                 : rng.squarefree_xpoly(fd, 2, 2, 1, 1 + rng.below(4));
      const SparseSpec spec = rng.sparse_spec(fd, d, 1);
      const VanishingPoly vp = build_vanishing_poly(f, spec);
      if (vp.conditions.overall) {
        ++guaranteed_seen;
        EXPECT_FALSE(vp.P.is_zero());
        if (vp.k >= 1) {
          EXPECT_LE(vp.P.total_degree(), vp.bounds.deg_bound);
          // Separability transfers to the substituted polynomial.
          EXPECT_TRUE(is_separable_in_t(build_psi(f, spec)));
        }
      }
    }
    EXPECT_GT(guaranteed_seen, 0);
  }
}

TEST(VanishingPoly, IrreducibilityTransfersAtTinyScale) {
  // Irreducible f (by brute factor search) stays irreducible under the
  // substitution when the per-index gcd conditions hold.
  auto f2 = FieldDescriptor::make(2, 1);
  const auto* fd = f2.get();
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  const std::vector<XPoly> candidates = {
      x * x + x + t,       // irreducible over F_2[t]
      x - t,               // linear
      x * x + t * x + t};  // irreducible
  const SparseSpec spec({TPoly::t(fd)}, {TPoly::one(fd)}, {TPoly::zero(fd)});
  for (const auto& f : candidates) {
    if (brute_has_nontrivial_factorization(f)) continue;
    const XPoly sub = build_psi(f, spec);
    EXPECT_FALSE(brute_has_nontrivial_factorization(sub)) << to_string(f);
  }
}
