#include "sqfval/parse.hpp"

#include "gtest/gtest.h"
#include "sqfval/gen.hpp"

using namespace sqfval;

TEST(Parse, BasicGrammar) {
  auto f5 = FieldDescriptor::make(5, 1);
  const auto* fd = f5.get();
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  EXPECT_EQ(parse_xpoly(f5, "x1^2 - t", 1), x * x - t);
  EXPECT_EQ(parse_xpoly(f5, "t^2*x1 + 3", 1),
            t * t * x + XPoly::constant(fd, 1, Fq::from_index(f5, 3)));
  EXPECT_EQ(parse_xpoly(f5, "x^2 - t", 1), x * x - t);  // bare x is x1
  EXPECT_EQ(parse_xpoly(f5, "  - t + 2 * x ", 1),
            -t + x * Fq::from_index(f5, 2));
  EXPECT_EQ(parse_xpoly(f5, "x*x*x", 1), x * x * x);
  EXPECT_EQ(parse_xpoly(f5, "t^0", 1), XPoly::one(fd, 1));
}

TEST(Parse, ExtensionFieldCoefficientsAreEnumerationIndices) {
  auto f4 = FieldDescriptor::make(2, 2);
  const XPoly g = parse_xpoly(f4, "2", 0);  // index 2 = the generator
  EXPECT_EQ(g, XPoly::constant(f4.get(), 0, Fq::from_index(f4, 2)));
  EXPECT_THROW(parse_xpoly(f4, "4", 0), ParseError);  // not below q
}

TEST(Parse, ExponentLetterPTracksTheField) {
  auto f4 = FieldDescriptor::make(2, 2);
  auto f9 = FieldDescriptor::make(3, 2);
  EXPECT_EQ(parse_tpoly(f4, "t^p"), TPoly::monomial(f4.get(), Fq::one(f4), 2));
  EXPECT_EQ(parse_tpoly(f9, "t^p"), TPoly::monomial(f9.get(), Fq::one(f9), 3));
}

TEST(Parse, InferenceCountsVariables) {
  auto f5 = FieldDescriptor::make(5, 1);
  EXPECT_EQ(parse_xpoly_infer(f5, "t + 1").nvars(), 0u);
  EXPECT_EQ(parse_xpoly_infer(f5, "x + t").nvars(), 1u);
  EXPECT_EQ(parse_xpoly_infer(f5, "x1*x2 - t").nvars(), 2u);
}

TEST(Parse, ErrorsCarryPositions) {
  auto f5 = FieldDescriptor::make(5, 1);
  try {
    parse_xpoly(f5, "x1 + @", 1);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos);
  }
  EXPECT_THROW(parse_xpoly(f5, "", 1), ParseError);
  EXPECT_THROW(parse_xpoly(f5, "x2 + 1", 1), ParseError);
  EXPECT_THROW(parse_xpoly(f5, "7 + t", 1), ParseError);
  EXPECT_THROW(parse_xpoly(f5, "t +", 1), ParseError);
  EXPECT_THROW(parse_xpoly(f5, "t ^", 1), ParseError);
  EXPECT_THROW(parse_tpoly(f5, "x + 1"), std::invalid_argument);
}

TEST(Parse, PrintedFormsRoundTrip) {
  for (const char* spec : {"5", "4", "9"}) {
    auto field = FieldDescriptor::from_spec(spec);
    const auto* fd = field.get();
    Rng rng(71);
    for (int i = 0; i < 200; ++i) {
      const std::uint32_t nx = static_cast<std::uint32_t>(rng.below(3));
      const XPoly f = rng.xpoly(fd, nx, 3, 3, rng.below(6));
      EXPECT_EQ(parse_xpoly(fd, to_string(f), nx), f) << to_string(f);
    }
    for (int i = 0; i < 100; ++i) {
      const TPoly u = rng.tpoly(fd, 5);
      EXPECT_EQ(parse_tpoly(fd, to_string(u)), u) << to_string(u);
    }
  }
}

TEST(Parse, CanonicalPrintingShapes) {
  auto f5 = FieldDescriptor::make(5, 1);
  const auto* fd = f5.get();
  EXPECT_EQ(to_string(XPoly::zero(fd, 1)), "0");
  EXPECT_EQ(to_string(TPoly::one(f5)), "1");
  const XPoly x = XPoly::var_x(fd, 1, 1);
  const XPoly t = XPoly::var_t(fd, 1);
  // Terms print in descending monomial order with t most significant.
  EXPECT_EQ(to_string(x * x - t), "4*t + x1^2");
  EXPECT_EQ(to_string(t * t + t * x * Fq::from_index(f5, 2)), "t^2 + 2*t*x1");
}
