#include "sqfval/xpoly.hpp"

#include "gtest/gtest.h"
#include "sqfval/gen.hpp"

using namespace sqfval;

namespace {

struct Vars {
  Field field;
  const FieldDescriptor* fd;
  XPoly x;
  XPoly t;
  explicit Vars(const char* spec, std::uint32_t nx = 1)
      : field(FieldDescriptor::from_spec(spec)),
        fd(field.get()),
        x(XPoly::var_x(fd, nx, 1)),
        t(XPoly::var_t(fd, nx)) {}
};

}  // namespace

TEST(XPolyArith, BasicExpansion) {
  Vars v("7");
  const XPoly f = v.x * (v.x + v.t);
  XPoly expected(v.fd, 1);
  expected.add_term({0, 2}, Fq::one(v.fd));
  expected.add_term({1, 1}, Fq::one(v.fd));
  EXPECT_EQ(f, expected);
  EXPECT_EQ(f + XPoly::zero(v.fd, 1), f);
}

TEST(XPolyArith, RingAxiomsAndTotalDegreeAdditivity) {
  for (const char* spec : {"5", "4"}) {
    auto field = FieldDescriptor::from_spec(spec);
    const auto* fd = field.get();
    Rng rng(97);
    for (int i = 0; i < 200; ++i) {
      const XPoly a = rng.xpoly(fd, 2, 2, 2, 1 + rng.below(4));
      const XPoly b = rng.xpoly(fd, 2, 2, 2, 1 + rng.below(4));
      const XPoly c = rng.xpoly(fd, 2, 2, 2, 1 + rng.below(4));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero() && !b.is_zero()) {
        EXPECT_EQ((a * b).deg_total(), a.deg_total() + b.deg_total());
      }
    }
  }
}

TEST(XPolyArith, DegreeBookkeeping) {
  Vars v("5", 2);
  const XPoly x2 = XPoly::var_x(v.fd, 2, 2);
  const XPoly f = v.x * v.x * x2 + v.t * v.t * v.t * x2 + v.x;
  EXPECT_EQ(f.deg_t(), 3);
  EXPECT_EQ(f.deg_x(1), 2);
  EXPECT_EQ(f.deg_x(2), 1);
  EXPECT_EQ(f.deg_xvec(), 3);   // x1^2 * x2
  EXPECT_EQ(f.deg_total(), 4);  // t^3 * x2
  EXPECT_EQ(XPoly::zero(v.fd, 2).deg_t(), kNegInfDeg);
  EXPECT_EQ(XPoly::zero(v.fd, 2).deg_xvec(), kNegInfDeg);
}

TEST(XPolyEvaluate, PinnedSubstitutions) {
  Vars v("5");
  auto& fd = v.fd;
  const TPoly t = TPoly::t(fd);
  // f = x at u = t^2 + 1.
  const TPoly u1 = t * t + TPoly::one(fd);
  EXPECT_EQ(v.x.evaluate_x({u1}), u1);
  // f = x(x+t) at u = 0 collapses to 0.
  const XPoly f2 = v.x * (v.x + v.t);
  EXPECT_TRUE(f2.evaluate_x({TPoly::zero(fd)}).is_zero());
  // f = x^2 - t at u = t.
  const XPoly f3 = v.x * v.x - v.t;
  EXPECT_EQ(f3.evaluate_x({t}), t * t - t);
  EXPECT_THROW(v.x.evaluate_x({}), std::invalid_argument);
}

TEST(XPolySubstitute, LinearFormAndBinomial) {
  Vars v("5");
  auto* fd = v.fd;
  // x1 -> a x1 + b x2 + c with a = 2, b = t, c = 3.
  XPoly image(fd, 2);
  image = XPoly::var_x(fd, 2, 1) * Fq::from_index(v.field, 2) +
          XPoly::var_x(fd, 2, 2) * TPoly::t(fd) +
          XPoly::constant(fd, 2, Fq::from_index(v.field, 3));
  EXPECT_EQ(v.x.substitute_x({image}), image);
  // x1^2 with x1 -> x1 + t x2.
  const XPoly lin = XPoly::var_x(fd, 2, 1) +
                    XPoly::var_x(fd, 2, 2) * TPoly::t(fd);
  const XPoly sq = (v.x * v.x).substitute_x({lin});
  EXPECT_EQ(sq, lin * lin);
  XPoly expected(fd, 2);
  expected.add_term({0, 2, 0}, Fq::one(fd));
  expected.add_term({1, 1, 1}, Fq::from_index(v.field, 2));
  expected.add_term({2, 0, 2}, Fq::one(fd));
  EXPECT_EQ(sq, expected);
}

TEST(XPolySubstitute, IsARingHomomorphismFixingTheBase) {
  for (const char* spec : {"5", "4"}) {
    auto field = FieldDescriptor::from_spec(spec);
    const auto* fd = field.get();
    Rng rng(101);
    for (int i = 0; i < 500; ++i) {
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
      const XPoly f = rng.xpoly(fd, d, 2, 2, 1 + rng.below(4));
      const XPoly g = rng.xpoly(fd, d, 2, 2, 1 + rng.below(4));
      std::vector<XPoly> images;
      for (std::uint32_t j = 0; j < d; ++j)
        images.push_back(rng.xpoly(fd, 2, 2, 2, 1 + rng.below(3)));
      EXPECT_EQ((f * g).substitute_x(images),
                f.substitute_x(images) * g.substitute_x(images));
      EXPECT_EQ((f + g).substitute_x(images),
                f.substitute_x(images) + g.substitute_x(images));
      // Fixes F_q[t].
      const TPoly bt = rng.tpoly(fd, 3);
      EXPECT_EQ(XPoly::from_tpoly(bt, d).substitute_x(images),
                XPoly::from_tpoly(bt, 2));
    }
  }
}

TEST(XPolyDerivative, PinnedExamples) {
  Vars v5("5");
  // d(t^p)/dt = 0 in characteristic p.
  EXPECT_TRUE(XPoly::monomial(v5.fd, 1, Fq::one(v5.field), 5, {})
                  .partial_derivative(0)
                  .is_zero());
  // d(x^2 + tx)/dx = 2x + t.
  const XPoly f = v5.x * v5.x + v5.t * v5.x;
  EXPECT_EQ(f.partial_derivative(1),
            v5.x * Fq::from_index(v5.field, 2) + v5.t);
  // d(t^3 x)/dt = 3 t^2 x.
  const XPoly g = v5.t * v5.t * v5.t * v5.x;
  EXPECT_EQ(g.partial_derivative(0),
            v5.t * v5.t * v5.x * Fq::from_index(v5.field, 3));
  EXPECT_THROW(f.partial_derivative(2), std::invalid_argument);
}

TEST(XPolyDerivative, AdditivityAndLeibniz) {
  auto field = FieldDescriptor::from_spec("9");
  const auto* fd = field.get();
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const XPoly f = rng.xpoly(fd, 2, 2, 2, 1 + rng.below(4));
    const XPoly g = rng.xpoly(fd, 2, 2, 2, 1 + rng.below(4));
    for (std::uint32_t slot = 0; slot <= 2; ++slot) {
      EXPECT_EQ((f + g).partial_derivative(slot),
                f.partial_derivative(slot) + g.partial_derivative(slot));
      EXPECT_EQ((f * g).partial_derivative(slot),
                f.partial_derivative(slot) * g + f * g.partial_derivative(slot));
    }
  }
}

TEST(XPolyDerivative, ChainRuleAgainstSubstitution) {
  // d(f o g)/dt = sum_i (df/dx_i o g) g_i' + (df/dt o g), exactly.
  for (const char* spec : {"5", "4"}) {
    auto field = FieldDescriptor::from_spec(spec);
    const auto* fd = field.get();
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(2));
      const XPoly f = rng.xpoly(fd, d, 2, 3, 1 + rng.below(4));
      std::vector<TPoly> g;
      for (std::uint32_t j = 0; j < d; ++j) g.push_back(rng.tpoly(fd, 3));
      const TPoly composed = f.evaluate_x(g);
      TPoly rhs = f.partial_derivative(0).evaluate_x(g);
      for (std::uint32_t j = 0; j < d; ++j)
        rhs = rhs +
              f.partial_derivative(j + 1).evaluate_x(g) * g[j].derivative();
      EXPECT_EQ(composed.derivative(), rhs);
    }
  }
}

TEST(XPolyContent, PinnedSplits) {
  Vars v("5");
  const TPoly t = TPoly::t(v.fd);
  // f = tx + t^2: content t, primitive x + t.
  const XPoly f = v.t * v.x + v.t * v.t;
  const auto [c1, p1] = content_and_primitive(f);
  EXPECT_EQ(c1, t);
  EXPECT_EQ(p1, v.x + v.t);
  // Primitive input keeps content one.
  const auto [c2, p2] = content_and_primitive(v.x + v.t);
  EXPECT_TRUE(c2.is_one());
  EXPECT_EQ(p2, v.x + v.t);
  // Pure t input: content is everything.
  const auto [c3, p3] = content_and_primitive(v.t * v.t);
  EXPECT_EQ(c3, t * t);
  EXPECT_TRUE(p3.is_one());
  EXPECT_THROW(content_and_primitive(XPoly::zero(v.fd, 1)),
               std::invalid_argument);
}

TEST(XPolyContent, ProductIdentityOnRandomInputs) {
  auto field = FieldDescriptor::from_spec("4");
  const auto* fd = field.get();
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const XPoly f = rng.nonzero_xpoly(fd, 2, 3, 2, 1 + rng.below(5));
    const auto [content, primitive] = content_and_primitive(f);
    EXPECT_EQ(primitive * content, f);
    EXPECT_TRUE(content.is_monic());
    const auto [c2, p2] = content_and_primitive(primitive);
    EXPECT_TRUE(c2.is_one());
  }
}

TEST(XPolyPthPower, SplitExamplesAndRoundTrip) {
  Vars v2("2");
  // t^2 + x^2 = (t + x)^2 over F_2.
  const XPoly sq = v2.t * v2.t + v2.x * v2.x;
  const auto root = pth_power_split(sq);
  ASSERT_TRUE(root.has_value());
  EXPECT_EQ(*root, v2.t + v2.x);
  EXPECT_FALSE(pth_power_split(v2.t + v2.x).has_value());

  Vars v5("5");
  XPoly mono(v5.fd, 1);
  mono.add_term({5, 5}, Fq::one(v5.field));
  const auto r5 = pth_power_split(mono);
  ASSERT_TRUE(r5.has_value());
  EXPECT_EQ(*r5, v5.t * v5.x);

  auto f9 = FieldDescriptor::make(3, 2);
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const XPoly g = rng.nonzero_xpoly(f9.get(), 2, 2, 2, 1 + rng.below(4));
    const XPoly gp = g * g * g;  // p = 3
    const auto back = pth_power_split(gp);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, g);
  }
}

TEST(XPolyDivision, ExactQuotientsAndRejections) {
  auto field = FieldDescriptor::from_spec("9");
  const auto* fd = field.get();
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const XPoly f = rng.nonzero_xpoly(fd, 2, 2, 2, 1 + rng.below(4));
    const XPoly g = rng.nonzero_xpoly(fd, 2, 2, 2, 1 + rng.below(4));
    const auto q = try_divide(f * g, g);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, f);
  }
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  EXPECT_FALSE(try_divide(x + t, x * x).has_value());
  EXPECT_FALSE(try_divide(x * x + XPoly::one(fd, 1), x).has_value());
  EXPECT_THROW(try_divide(x, XPoly::zero(fd, 1)), std::invalid_argument);
}

TEST(XPolyGcd, CommonFactorsAreRecovered) {
  for (const char* spec : {"5", "4"}) {
    auto field = FieldDescriptor::from_spec(spec);
    const auto* fd = field.get();
    Rng rng(31);
    for (int i = 0; i < 60; ++i) {
      const XPoly f = rng.nonzero_xpoly(fd, 2, 2, 1, 1 + rng.below(3));
      const XPoly g = rng.nonzero_xpoly(fd, 2, 2, 1, 1 + rng.below(3));
      const XPoly d = rng.nonzero_xpoly(fd, 2, 1, 1, 1 + rng.below(3));
      const XPoly got = gcd_multi(f * d, g * d);
      EXPECT_TRUE(try_divide(got, d.normalized()).has_value());
      EXPECT_TRUE(try_divide(f * d, got).has_value());
      EXPECT_TRUE(try_divide(g * d, got).has_value());
    }
  }
}

TEST(XPolyGcd, NormalizationAndEdgeCases) {
  Vars v("5");
  EXPECT_EQ(gcd_multi(v.x + v.t, v.x + v.t), v.x + v.t);
  EXPECT_TRUE(gcd_multi(v.x, v.t).is_one());
  EXPECT_EQ(gcd_multi(XPoly::zero(v.fd, 1), v.x), v.x);
  EXPECT_THROW(gcd_multi(XPoly::zero(v.fd, 1), XPoly::zero(v.fd, 1)),
               std::invalid_argument);
  // Scaled inputs normalize to the same gcd.
  const XPoly f = (v.x + v.t) * Fq::from_index(v.field, 3);
  EXPECT_EQ(gcd_multi(f, v.x + v.t), v.x + v.t);
}

TEST(CoefPolyType, RejectsTAndEvaluates) {
  Vars v("5", 2);
  EXPECT_THROW(CoefPoly(v.t), std::invalid_argument);
  XPoly p(v.fd, 2);
  p.add_term({0, 1, 2}, Fq::from_index(v.field, 2));  // 2 x1 x2^2
  const CoefPoly cp(p);
  EXPECT_EQ(cp.total_degree(), 3);
  const Fq two = Fq::from_index(v.field, 2);
  const Fq three = Fq::from_index(v.field, 3);
  // 2 * 2 * 3^2 = 36 = 1 mod 5.
  EXPECT_EQ(cp.evaluate({two, three}), Fq::one(v.field));
}
