#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "gerbe/error.hpp"
#include "gerbe/int_matrix.hpp"
#include "gerbe/smith.hpp"

namespace gerbe {
namespace {

TEST(Integer, PromotesPastInt64AndDemotesBack) {
  const Integer big = Integer(std::numeric_limits<std::int64_t>::max()) + Integer(1);
  EXPECT_FALSE(big.fits_int64());
  EXPECT_EQ(big.str(), "9223372036854775808");
  EXPECT_THROW(big.to_int64(), Error);
  const Integer back = big - Integer(1);
  EXPECT_TRUE(back.fits_int64());
  EXPECT_EQ(back.to_int64(), std::numeric_limits<std::int64_t>::max());
}

TEST(Integer, MinInt64Negation) {
  Integer x(std::numeric_limits<std::int64_t>::min());
  x.negate();
  EXPECT_FALSE(x.fits_int64());
  EXPECT_EQ(x.str(), "9223372036854775808");
}

TEST(Integer, FloorDivisionAndGcd) {
  EXPECT_EQ(div_floor(Integer(-7), Integer(2)), Integer(-4));
  EXPECT_EQ(mod_floor(Integer(-7), Integer(2)), Integer(1));
  EXPECT_EQ(mod_floor(Integer(7), Integer(-2)), Integer(-1));
  EXPECT_EQ(gcd(Integer(-12), Integer(18)), Integer(6));
  EXPECT_EQ(gcd(Integer(0), Integer(0)), Integer(0));
}

TEST(Integer, OrderingAcrossRepresentations) {
  const Integer huge = Integer(std::numeric_limits<std::int64_t>::max()) * Integer(4);
  EXPECT_LT(Integer(5), huge);
  EXPECT_GT(Integer(-5), -huge);
  EXPECT_EQ(huge.sign(), 1);
  EXPECT_EQ(huge.bit_length(), 65u);
}

TEST(IntMatrix, BareissDeterminant) {
  const IntMatrix a = IntMatrix::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  EXPECT_EQ(determinant(a), Integer(4));
  const IntMatrix s = IntMatrix::from_rows({{1, 2}, {2, 4}});
  EXPECT_EQ(determinant(s), Integer(0));
}

TEST(Smith, KnownDiagonal) {
  // Classic example: diag(2, 6, 12).
  const IntMatrix a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const SmithDecomposition d = smith_normal_form(a);
  ASSERT_EQ(d.divisors.size(), 3u);
  EXPECT_EQ(d.divisors[0], Integer(2));
  EXPECT_EQ(d.divisors[1], Integer(6));
  EXPECT_EQ(d.divisors[2], Integer(12));
  EXPECT_EQ(d.U * a * d.V, d.diagonal());
}

TEST(Smith, RandomMatricesSatisfyInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix a(5, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j) a(i, j) = entry(rng) * (trial % 3 == 0 && i == 4 ? 0 : 1);
    SmithOptions opts;
    opts.left_inverse = opts.right_inverse = true;
    const SmithDecomposition d = smith_normal_form(a, opts);
    EXPECT_EQ(d.U * a * d.V, d.diagonal());
    EXPECT_EQ(d.U * d.U_inv, IntMatrix::identity(5));
    EXPECT_EQ(d.V * d.V_inv, IntMatrix::identity(7));
    for (std::size_t i = 0; i + 1 < d.divisors.size(); ++i) {
      EXPECT_GT(d.divisors[i], Integer(0));
      EXPECT_EQ(mod_floor(d.divisors[i + 1], d.divisors[i]), Integer(0));
    }
  }
}

TEST(Smith, BitCapRaisesOverflowPolicy) {
  // The cap applies once entries leave the 64-bit fast path.
  const Integer big = Integer(std::int64_t{1} << 62) * Integer(1000);
  IntMatrix a(2, 2);
  a(0, 0) = big + Integer(1);
  a(0, 1) = big;
  a(1, 0) = big * Integer(3);
  a(1, 1) = Integer(7);
  SmithOptions opts;
  opts.max_bits = 64;
  try {
    smith_normal_form(a, opts);
    FAIL() << "expected OverflowPolicy";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverflowPolicy);
  }
  opts.max_bits = 0;
  const SmithDecomposition d = smith_normal_form(a, opts);
  EXPECT_EQ(d.U * a * d.V, d.diagonal());
}

TEST(Smith, UnimodularInverse) {
  const IntMatrix a = IntMatrix::from_rows({{2, 1}, {7, 4}});
  EXPECT_EQ(a * unimodular_inverse(a), IntMatrix::identity(2));
  const IntMatrix b = IntMatrix::from_rows({{2, 0}, {0, 1}});
  try {
    unimodular_inverse(b);
    FAIL() << "expected NotUnimodular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
  }
}

}  // namespace
}  // namespace gerbe
