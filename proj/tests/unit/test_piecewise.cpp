#include <gtest/gtest.h>

#include "morasslab/piecewise_map.hpp"
#include "morasslab/sampling.hpp"
#include "oracles.hpp"

namespace morasslab {
namespace {

using oracle::ord;

TEST(IntervalSet, MergesAndIntersects) {
  IntervalSet s;
  s.insert({ord("0"), ord("w")});
  s.insert({ord("w"), ord("w + 3")});
  s.insert({ord("w*2"), ord("w*3")});
  ASSERT_EQ(s.parts().size(), 2u);
  EXPECT_TRUE(s.contains(ord("w + 2")));
  EXPECT_FALSE(s.contains(ord("w + 3")));
  EXPECT_TRUE(s.covers({ord("5"), ord("w + 1")}));
  EXPECT_FALSE(s.covers({ord("5"), ord("w*2 + 1")}));
  const auto t = s.intersect(Interval{ord("w + 1"), ord("w*2 + 5")});
  ASSERT_EQ(t.parts().size(), 2u);
  EXPECT_EQ(t.min(), ord("w + 1"));
}

TEST(PiecewiseMap, ShiftEvaluation) {
  EXPECT_EQ(make_shift(kOmega, Ordinal{})(ord("3")), ord("w + 3"));
  EXPECT_EQ(make_shift(kOmega, kOmega), PiecewiseMap::identity(kOmega));
  EXPECT_EQ(make_shift(ord("w*2"), kOmega)(ord("w + 1")), ord("w*2 + 1"));
  EXPECT_EQ(make_shift(ord("w*2"), kOmega)(ord("5")), ord("5"));
  EXPECT_EQ(make_shift(ord("w*2"), kOmega).target_theta(), ord("w*3"));
}

TEST(PiecewiseMap, Composition) {
  const auto f = make_shift(kOmega, Ordinal{});
  EXPECT_EQ(compose(PiecewiseMap::identity(ord("w*2")), f), f);
  EXPECT_EQ(compose(f, PiecewiseMap::identity(kOmega)), f);
  const auto g = make_shift(ord("w*2"), Ordinal{});
  EXPECT_EQ(compose(g, f)(ord("2")), ord("w*3 + 2"));
  EXPECT_THROW(compose(f, g), std::invalid_argument);
}

TEST(PiecewiseMap, InverseAndPreimages) {
  const auto s = make_shift(ord("w*2"), kOmega);
  const auto inv = s.inverse();
  EXPECT_EQ(inv(ord("w*2 + 4")), ord("w + 4"));
  EXPECT_FALSE(inv.apply(ord("w + 4")).has_value());
  EXPECT_EQ(s.preimages(ord("w*2")), std::vector<Ordinal>{kOmega});
  EXPECT_TRUE(s.preimages(ord("w + 1")).empty());
  EXPECT_TRUE(s.is_total());
  EXPECT_TRUE(s.is_order_preserving());
  EXPECT_TRUE(s.fits_target());
  EXPECT_FALSE(inv.is_total());
}

TEST(PiecewiseMap, CanonicalPiecesMakeEqualityExtensional) {
  const PiecewiseMap split({{ord("0"), ord("w"), ord("0")}, {ord("w"), ord("w*2"), ord("w")}}, ord("w*2"),
                           ord("w*2"));
  EXPECT_EQ(split, PiecewiseMap::identity(ord("w*2")));
  EXPECT_EQ(split.pieces().size(), 1u);
}

TEST(PiecewiseMapProperty, ComposeAgreesPointwise) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Ordinal t0 = nat_multiply(kOmega, uniform(rng, 1, 4));
    const Ordinal g0 = nat_multiply(kOmega, uniform(rng, 0, 3));
    if (t0 < g0) continue;
    const auto f = make_shift(t0, g0);
    const Ordinal t1 = f.target_theta();
    const auto g = make_shift(t1, nat_multiply(kOmega, uniform(rng, 0, t1.terms().front().coefficient)));
    const auto gf = compose(g, f);
    for (int k = 0; k < 20; ++k) {
      const Ordinal x = random_ordinal_below(t0, rng);
      ASSERT_EQ(gf(x), g(f(x)));
      ASSERT_EQ(gf.inverse()(gf(x)), x);
    }
  }
}

}  // namespace
}  // namespace morasslab
