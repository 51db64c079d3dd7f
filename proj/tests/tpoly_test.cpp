#include "sqfval/tpoly.hpp"

#include "gtest/gtest.h"
#include "sqfval/gen.hpp"

using namespace sqfval;

namespace {

TPoly tp(const Field& f, std::initializer_list<std::uint64_t> idx) {
  std::vector<Fq> c;
  for (auto i : idx) c.push_back(Fq::from_index(f, i));
  return TPoly::from_coeffs(f, std::move(c));
}

}  // namespace

TEST(TPolyArith, FreshmansDreamInCharTwo) {
  auto f2 = FieldDescriptor::make(2, 1);
  const TPoly u = tp(f2, {1, 1});  // t + 1
  EXPECT_EQ(u * u, tp(f2, {1, 0, 1}));
}

TEST(TPolyArith, AdditiveIdentity) {
  auto f5 = FieldDescriptor::make(5, 1);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const TPoly u = rng.tpoly(f5.get(), 5);
    EXPECT_EQ(u + TPoly::zero(f5), u);
  }
}

TEST(TPolyArith, RingAxiomsAndDegreeAdditivity) {
  for (const char* spec : {"5", "4", "9"}) {
    auto field = FieldDescriptor::from_spec(spec);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const TPoly a = rng.tpoly(field.get(), 4);
      const TPoly b = rng.tpoly(field.get(), 4);
      const TPoly c = rng.tpoly(field.get(), 4);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero() && !b.is_zero())
        EXPECT_EQ((a * b).deg(), a.deg() + b.deg());
      else
        EXPECT_TRUE((a * b).is_zero());
    }
  }
}

TEST(TPolyArith, ZeroDegreeSentinelBelowEverything) {
  auto f3 = FieldDescriptor::make(3, 1);
  EXPECT_EQ(TPoly::zero(f3).deg(), kNegInfDeg);
  EXPECT_LT(TPoly::zero(f3).deg(), -1000000);
  EXPECT_EQ(TPoly::one(f3).deg(), 0);
}

TEST(TPolyDivmod, QuotientRemainderInvariant) {
  auto f9 = FieldDescriptor::make(3, 2);
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const TPoly u = rng.tpoly(f9.get(), 6);
    const TPoly v = rng.nonzero_tpoly(f9.get(), 3);
    const auto [q, r] = u.divmod(v);
    EXPECT_EQ(q * v + r, u);
    EXPECT_LT(r.deg(), v.deg());
  }
  EXPECT_THROW(TPoly::one(f9).divmod(TPoly::zero(f9)), std::invalid_argument);
}

TEST(TPolyGcd, SpecifiedExamples) {
  auto f5 = FieldDescriptor::make(5, 1);
  const TPoly t = TPoly::t(f5);
  EXPECT_EQ(gcd_t(t * t + t, t), t);
  EXPECT_EQ(gcd_t(t, t * t), t);
  EXPECT_EQ(gcd_t(TPoly::one(f5), TPoly::zero(f5)), TPoly::one(f5));
  EXPECT_THROW(gcd_t(TPoly::zero(f5), TPoly::zero(f5)), std::invalid_argument);
}

TEST(TPolyGcd, MonicDividesBothAndAbsorbsCommonFactors) {
  auto f4 = FieldDescriptor::make(2, 2);
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const TPoly u = rng.nonzero_tpoly(f4.get(), 4);
    const TPoly v = rng.nonzero_tpoly(f4.get(), 4);
    const TPoly d = rng.nonzero_tpoly(f4.get(), 2);
    const TPoly g = gcd_t(u * d, v * d);
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(g.divides(u * d));
    EXPECT_TRUE(g.divides(v * d));
    EXPECT_TRUE(d.divides(g));
  }
}

TEST(TPolyDerivative, CharacteristicKillsPthPowers) {
  auto f5 = FieldDescriptor::make(5, 1);
  EXPECT_TRUE(TPoly::monomial(f5.get(), Fq::one(f5), 5).derivative().is_zero());
  EXPECT_EQ(TPoly::monomial(f5.get(), Fq::one(f5), 3).derivative(),
            TPoly::monomial(f5.get(), Fq::from_index(f5, 3), 2));
}

TEST(TPolyEvaluate, MatchesTermByTermExpansion) {
  auto f8 = FieldDescriptor::make(2, 3);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const TPoly u = rng.tpoly(f8.get(), 5);
    const Fq x = rng.element(f8.get());
    Fq direct = Fq::zero(f8);
    Fq power = Fq::one(f8);
    for (int j = 0; j <= u.deg(); ++j) {
      direct = direct + u.coeff(static_cast<std::size_t>(j)) * power;
      power = power * x;
    }
    EXPECT_EQ(u.evaluate(x), direct);
  }
}

TEST(TPolyPthPowerRoot, RoundTripAndRejection) {
  auto f4 = FieldDescriptor::make(2, 2);
  Rng rng(37);
  for (int i = 0; i < 50; ++i) {
    const TPoly g = rng.tpoly(f4.get(), 3);
    const TPoly gp = g * g;  // p = 2
    const auto root = pth_power_root(gp);
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(*root, g);
  }
  EXPECT_FALSE(pth_power_root(TPoly::t(f4) + TPoly::one(f4)).has_value());
}
