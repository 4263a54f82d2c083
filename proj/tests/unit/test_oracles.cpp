// Sanity checks for the reference implementations themselves.

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace morasslab {
namespace {

using oracle::Block;
using oracle::ord;

TEST(WellOrderOracle, OrderTypes) {
  using W = oracle::WellOrder;
  EXPECT_EQ(oracle::order_type(W{Block::kPoint, Block::kOmega}), (oracle::OrderType{1, 0}));
  EXPECT_EQ(oracle::order_type(W{Block::kOmega, Block::kPoint, Block::kPoint}), (oracle::OrderType{1, 2}));
  EXPECT_EQ(oracle::order_type(W{Block::kOmega, Block::kPoint, Block::kOmega}), (oracle::OrderType{2, 0}));
  EXPECT_EQ(oracle::to_ordinal({2, 3}), ord("w*2 + 3"));
}

TEST(WellOrderOracle, SegmentsDecideOrder) {
  using W = oracle::WellOrder;
  const W w_plus_1{Block::kOmega, Block::kPoint};
  const W w{Block::kOmega};
  const W five(5, Block::kPoint);
  EXPECT_TRUE(oracle::less_by_segments(w, w_plus_1, 8));
  EXPECT_FALSE(oracle::less_by_segments(w_plus_1, w, 8));
  EXPECT_TRUE(oracle::less_by_segments(five, w, 8));
  EXPECT_FALSE(oracle::less_by_segments(w, w, 8));
}

TEST(GridOracle, Frag0Grid) {
  const auto g = oracle::grid_below(ord("w*2"), 3, 2);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.front(), Ordinal{});
  EXPECT_EQ(g.back(), ord("w + 2"));
}

TEST(WordOracle, Frag0) {
  const auto frag = oracle::frag0();
  const oracle::WordOracle wo(frag, oracle::grid_below(frag.top_theta(), 1, 6));
  EXPECT_EQ(wo.word_count(0), 2u);
  EXPECT_EQ(wo.word_count(1), 1u);
  EXPECT_EQ(wo.mu(ord("3"), ord("w + 3")), 1u);
  EXPECT_EQ(wo.mu(ord("3"), ord("5")), 0u);
  EXPECT_TRUE(wo.preceq(ord("3"), ord("w + 3")));
  EXPECT_TRUE(wo.in_family({{ord("w + 3"), 0}, {ord("3"), 0}}));
  EXPECT_FALSE(wo.in_family({{ord("w + 3"), 0}, {ord("3"), 1}}));
}

TEST(GameTreeOracle, PersistencySmallPool) {
  const auto frag = oracle::frag0();
  oracle::PersistencyTree tree(frag, {ord("3"), ord("w + 3"), ord("w + 1")}, 3);
  EXPECT_TRUE(tree.winning({}, 3));
  // with 3 already at 1, value 0 for w + 3 would force 3 to 0
  oracle::PersistencyTree tight(frag, {ord("w + 3")}, 0);
  EXPECT_FALSE(tight.winning({{ord("3"), 1}}, 1));
  oracle::PersistencyTree loose(frag, {ord("w + 3")}, 1);
  EXPECT_TRUE(loose.winning({{ord("3"), 1}}, 1));
}

TEST(GameTreeOracle, EFSmallPool) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  const LayerKey u{ord("3")};
  oracle::EFTree tree(ab, {ab.a.constant, CElement{ord("3")}, CElement{SetElement{u, {1}}}});
  EXPECT_TRUE(tree.winning({}, 2));
  EXPECT_GT(tree.evaluations(), 0u);
}

}  // namespace
}  // namespace morasslab
