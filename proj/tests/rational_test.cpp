#include <gtest/gtest.h>

#include <random>

#include "wco/measure_space.hpp"
#include "wco/rational.hpp"

using namespace wco;

TEST(ParseDecimal, Forms) {
  EXPECT_EQ(parse_decimal("3"), Rational(3));
  EXPECT_EQ(parse_decimal("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_decimal("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_decimal("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_decimal("1E4"), Rational(10000));
  EXPECT_EQ(parse_decimal("1.5e+2"), Rational(150));
}

TEST(ParseDecimal, RejectsGarbage) {
  EXPECT_THROW(parse_decimal(""), InputError);
  EXPECT_THROW(parse_decimal("abc"), InputError);
  EXPECT_THROW(parse_decimal("1.2.3"), InputError);
  EXPECT_THROW(parse_decimal("1e"), InputError);
}

TEST(RationalFromDouble, IsExact) {
  EXPECT_EQ(rational_from_double(0.5), Rational(1, 2));
  EXPECT_EQ(rational_from_double(-3.0), Rational(-3));
  EXPECT_EQ(rational_from_double(0.0), Rational(0));
  EXPECT_NE(rational_from_double(0.1), Rational(1, 10));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    ASSERT_EQ(to_double(rational_from_double(x)), x);
  }
}

TEST(Binomial, Rows) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(70, 35), BigInt("112186277816662845432"));
  for (unsigned n = 1; n < 40; ++n)
    for (unsigned k = 1; k < n; ++k) ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}
