#include <gtest/gtest.h>

#include "morasslab/ordinal.hpp"
#include "morasslab/sampling.hpp"
#include "oracles.hpp"

namespace morasslab {
namespace {

using oracle::ord;

TEST(Ordinal, CompareBasics) {
  EXPECT_EQ(compare(kOmega, kOmega), std::strong_ordering::equal);
  EXPECT_EQ(compare(Ordinal::finite(3), kOmega), std::strong_ordering::less);
  EXPECT_EQ(compare(ord("w*2 + 1"), ord("w*2")), std::strong_ordering::greater);
  EXPECT_LT(ord("w*5 + 100"), ord("w^2"));
  EXPECT_LT(ord("w^2 + w"), ord("w^2*2"));
}

TEST(Ordinal, AdditionAbsorbsLeftTerms) {
  EXPECT_EQ(Ordinal::finite(1) + kOmega, kOmega);
  EXPECT_EQ(kOmega + Ordinal::finite(1), ord("w + 1"));
  EXPECT_EQ(ord("w*2 + 3") + kOmega, ord("w*3"));
  EXPECT_EQ(ord("w + 5") + ord("w^2 + 1"), ord("w^2 + 1"));
  EXPECT_EQ(ord("w^2 + w") + ord("w*3 + 2"), ord("w^2 + w*4 + 2"));
}

TEST(Ordinal, LeftSubtract) {
  EXPECT_EQ(left_subtract(ord("w*2"), ord("w*2 + 3")), Ordinal::finite(3));
  EXPECT_EQ(left_subtract(Ordinal{}, kOmega), kOmega);
  EXPECT_EQ(left_subtract(Ordinal::finite(3), kOmega), kOmega);
  EXPECT_EQ(left_subtract(ord("w + 7"), ord("w*3 + 1")), ord("w*2 + 1"));
  EXPECT_THROW(left_subtract(kOmega, Ordinal::finite(4)), OrdinalUnderflow);
}

TEST(Ordinal, NatMultiply) {
  EXPECT_EQ(nat_multiply(kOmega, 2), ord("w*2"));
  EXPECT_EQ(nat_multiply(Ordinal{}, 5), Ordinal{});
  EXPECT_EQ(nat_multiply(ord("w + 1"), 2), ord("w*2 + 1"));
  EXPECT_EQ(nat_multiply(ord("w + 1"), 0), Ordinal{});
}

TEST(Ordinal, LimitAndSuccessor) {
  EXPECT_TRUE(is_limit(kOmega));
  EXPECT_FALSE(is_limit(ord("w + 1")));
  EXPECT_FALSE(is_limit(Ordinal{}));
  EXPECT_FALSE(Ordinal{}.is_successor());
  EXPECT_TRUE(ord("w^2 + 1").is_successor());
  EXPECT_EQ(ord("w*3 + 4").finite_part(), 4u);
  EXPECT_EQ(ord("w^3 + w").degree(), 3u);
}

TEST(Ordinal, ParseAndPrint) {
  for (const char* text : {"0", "7", "w", "w + 1", "w*2", "w^2*3 + w + 9"}) {
    EXPECT_EQ(Ordinal::parse(text).to_string(), text);
  }
  EXPECT_EQ(ord("3 + w"), kOmega);
  EXPECT_EQ(ord(" w*2+1 "), ord("w*2 + 1"));
  for (const char* bad : {"", "x", "w*", "w^ 2*", "w*0", "1 +", "-3"}) {
    EXPECT_THROW(Ordinal::parse(bad), OrdinalParseError) << bad;
  }
}

TEST(Ordinal, FromTermsValidates) {
  EXPECT_EQ(Ordinal::from_terms({{1, 2}, {0, 3}}), ord("w*2 + 3"));
  EXPECT_THROW(Ordinal::from_terms({{0, 3}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(Ordinal::from_terms({{1, 0}}), std::invalid_argument);
}

TEST(Ordinal, HashAgreesWithEquality) {
  std::hash<Ordinal> h;
  EXPECT_EQ(h(ord("w*2 + 1")), h(kOmega + kOmega + Ordinal::finite(1)));
}

// Property tests against explicit block presentations.

TEST(OrdinalProperty, AdditionMatchesConcatenation) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const oracle::OrderType ta{uniform(rng, 0, 3), uniform(rng, 0, 6)};
    const oracle::OrderType tb{uniform(rng, 0, 3), uniform(rng, 0, 6)};
    const auto wa = oracle::random_presentation(ta, rng);
    const auto wb = oracle::random_presentation(tb, rng);
    const auto sum = oracle::order_type(oracle::concat(wa, wb));
    ASSERT_EQ(oracle::to_ordinal(ta) + oracle::to_ordinal(tb), oracle::to_ordinal(sum));
  }
}

TEST(OrdinalProperty, AssociativityAndMonotonicity) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Ordinal a = random_ordinal_below(ord("w^3"), rng);
    const Ordinal b = random_ordinal_below(ord("w^3"), rng);
    const Ordinal c = random_ordinal_below(ord("w^3"), rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_LE(b, a + b);
    ASSERT_LE(a, a + b);
    if (b < c) ASSERT_LT(a + b, a + c);
    ASSERT_EQ(a + left_subtract(a, a + b), a + b);
    ASSERT_EQ(left_subtract(a, a + b), b);
  }
}

}  // namespace
}  // namespace morasslab
