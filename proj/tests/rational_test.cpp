// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.

#include "balansol/rational.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <limits>

namespace balansol {
namespace {

TEST(Rational, DefaultIsZero) {
  Rat r;
  EXPECT_EQ(r.num(), 0);
  EXPECT_EQ(r.den(), 1);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(r.to_string(), "0/1");
}

TEST(Rational, NormalizesSignAndGcd) {
  EXPECT_EQ(Rat(6, 4).to_string(), "3/2");
  EXPECT_EQ(Rat(-6, 4).to_string(), "-3/2");
  EXPECT_EQ(Rat(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rat(-6, -4).to_string(), "3/2");
  EXPECT_EQ(Rat(0, -5).to_string(), "0/1");
  EXPECT_EQ(Rat(7).to_string(), "7/1");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rat(1, 0), Error);
  EXPECT_THROW(Rat(1) / Rat(0), Error);
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(Rat::parse("0.85"), Rat(17, 20));
  EXPECT_EQ(Rat::parse("1"), Rat(1));
  EXPECT_EQ(Rat::parse("1").to_string(), "1/1");
  EXPECT_EQ(Rat::parse("3/6"), Rat(1, 2));
  EXPECT_EQ(Rat::parse("-0.5"), Rat(-1, 2));
  EXPECT_EQ(Rat::parse("2.50"), Rat(5, 2));
  EXPECT_EQ(Rat::parse("0.333"), Rat(333, 1000));
  EXPECT_EQ(Rat::parse("3.48"), Rat(87, 25));
  EXPECT_EQ(Rat::parse("3.48").to_string(), "87/25");
  EXPECT_EQ(Rat::parse("+2/4"), Rat(1, 2));
  EXPECT_EQ(Rat::parse("-7"), Rat(-7));
}

TEST(Rational, ParseRejectsGarbage) {
  EXPECT_THROW(Rat::parse(""), ParseError);
  EXPECT_THROW(Rat::parse("abc"), ParseError);
  EXPECT_THROW(Rat::parse("1/0"), ParseError);
  EXPECT_THROW(Rat::parse("1.2.3"), ParseError);
  EXPECT_THROW(Rat::parse("/3"), ParseError);
  EXPECT_THROW(Rat::parse("1/"), ParseError);
  EXPECT_THROW(Rat::parse("1."), ParseError);
  EXPECT_THROW(Rat::parse("1/-2"), ParseError);
  EXPECT_THROW(Rat::parse("2x"), ParseError);
  EXPECT_THROW(Rat::parse(" 1"), ParseError);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rat(1, 3) + Rat(1, 6), Rat(1, 2));
  EXPECT_EQ(Rat(1, 2) * Rat(2, 3), Rat(1, 3));
  EXPECT_EQ(Rat(1, 2) / Rat(1, 4), Rat(2));
  EXPECT_EQ(Rat(1) - Rat(3, 4), Rat(1, 4));
  EXPECT_EQ(-Rat(3, 7), Rat(-3, 7));
  EXPECT_EQ(Rat(-3, 7).abs(), Rat(3, 7));
  Rat acc;
  for (int i = 0; i < 10; ++i) acc += Rat(1, 10);
  EXPECT_EQ(acc, Rat(1));
}

TEST(Rational, Comparisons) {
  EXPECT_LT(Rat(1, 3), Rat(2, 5));
  EXPECT_GT(Rat(1, 2), Rat(13, 50));
  EXPECT_LE(Rat(1, 2), Rat(1, 2));
  EXPECT_GE(Rat(87, 50), Rat(87, 50));
  EXPECT_LT(Rat(-1, 2), Rat(0));
  EXPECT_LT(Rat(-2, 3), Rat(-1, 3));
  EXPECT_NE(Rat(1, 3), Rat(1, 4));
  // Equal values in different written forms normalize to equality.
  EXPECT_EQ(Rat(2, 6), Rat(1, 3));
}

TEST(Rational, OverflowThrowsInsteadOfWrapping) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(Rat(big) + Rat(big), OverflowError);
  EXPECT_THROW(Rat(big) * Rat(big), OverflowError);
  EXPECT_THROW(Rat(1, big) + Rat(1, big - 1), OverflowError);
  // Near the edge but reducible stays fine.
  EXPECT_EQ(Rat(big, big), Rat(1));
}

TEST(Rational, CheckedLcm) {
  EXPECT_EQ(lcm64_checked(4, 6), 12);
  EXPECT_EQ(lcm64_checked(50, 1000), 1000);
  EXPECT_EQ(lcm64_checked(1, 1), 1);
  EXPECT_THROW(lcm64_checked(0, 3), Error);
  const std::int64_t big_prime1 = 4611686018427387847;  // ~2^62
  EXPECT_THROW(lcm64_checked(big_prime1, big_prime1 - 2), OverflowError);
}

}  // namespace
}  // namespace balansol
