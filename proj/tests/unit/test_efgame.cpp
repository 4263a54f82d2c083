#include <gtest/gtest.h>

#include <sstream>

#include "morasslab/efgame.hpp"
#include "oracles.hpp"

namespace morasslab {
namespace {

using oracle::ord;

class NonExtendingResponder : public EFResponder {
 public:
  std::optional<PartialIso> respond(const EFChallenge&) override {
    ++calls_;
    if (calls_ == 1) return PartialIso{{CElement{ord("3")}, CElement{ord("3")}}};
    return PartialIso{};
  }

 private:
  int calls_ = 0;
};

TEST(EFGame, FirstMoveOnConstant) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  ScriptedEFChallenger forall({EFChallenge{{ab.a.constant}, {}}});
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{1, 4});
  ASSERT_EQ(t.outcome, GameOutcome::kExistsWins) << t.diagnostic;
  ASSERT_EQ(t.rounds.size(), 1u);
  EXPECT_EQ(t.rounds[0].response.at(ab.a.constant), ab.b.constant);
  EXPECT_EQ(exists.simulation().front(), ab.f_star);
}

TEST(EFGame, EmptyChallengeKeepsPosition) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  ScriptedEFChallenger forall({EFChallenge{{CElement{ord("5")}}, {}}});
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{3, 2});
  ASSERT_EQ(t.outcome, GameOutcome::kExistsWins);
  EXPECT_EQ(t.rounds[1].response, t.rounds[0].response);
  EXPECT_EQ(t.rounds[2].response, t.rounds[0].response);
}

TEST(EFGame, OrdinalChallengesAreFixed) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  ScriptedEFChallenger forall({EFChallenge{{CElement{ord("5")}, CElement{ord("w + 2")}}, {CElement{ord("7")}}}});
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{1, 4});
  ASSERT_EQ(t.outcome, GameOutcome::kExistsWins);
  for (const auto& [x, y] : t.rounds[0].response) {
    if (std::holds_alternative<Ordinal>(x)) EXPECT_EQ(x, y);
  }
  EXPECT_TRUE(t.rounds[0].response.contains(CElement{ord("7")}));
}

TEST(EFGame, NestedLayersPreserveProjection) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  const auto& c = *ab.a.universe;
  const LayerKey u{ord("3")};
  const auto v = make_layer_key({ord("3"), ord("w + 3")});
  const SetElement big{v, {1, 4}};
  const SetElement small = c.project(u, v, big);
  ScriptedEFChallenger forall({EFChallenge{{CElement{big}}, {}}, EFChallenge{{CElement{small}}, {}}});
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{2, 2});
  ASSERT_EQ(t.outcome, GameOutcome::kExistsWins) << t.diagnostic;
  const auto& psi = t.rounds[1].response;
  for (const auto& [x, y] : t.rounds[0].response) EXPECT_EQ(psi.at(x), y);
  EXPECT_TRUE(c.S(psi.at(CElement{small}), psi.at(CElement{big})));
  for (const auto& r : t.rounds) {
    const auto cls = classify_partial_iso(r.response, ab.a, ab.b);
    EXPECT_TRUE(cls.coherent) << cls.note;
    EXPECT_EQ(cls.n_psi, std::size_t{1});
  }
  const auto& sim = exists.simulation();
  for (std::size_t k = 1; k < sim.size(); ++k) {
    for (const auto& [x, a] : sim[k - 1]) EXPECT_EQ(sim[k].at(x), a);
  }
}

TEST(EFGame, NonExtensionLoses) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  ScriptedEFChallenger forall({});
  NonExtendingResponder exists;
  const auto t = play_ef(ab, forall, exists, EFConfig{3, 1});
  EXPECT_EQ(t.outcome, GameOutcome::kStuck);
  EXPECT_EQ(t.lost_round, 1u);
}

TEST(EFGame, RefereeRejectsIllegalChallenges) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  MorassEFStrategy exists(ab);
  ScriptedEFChallenger big({EFChallenge{{CElement{ord("1")}, CElement{ord("2")}}, {}}});
  EXPECT_THROW(play_ef(ab, big, exists, EFConfig{1, 1}), std::invalid_argument);
  ScriptedEFChallenger outside({EFChallenge{{CElement{ord("w*2")}}, {}}});
  EXPECT_THROW(play_ef(ab, outside, exists, EFConfig{1, 1}), std::invalid_argument);
  EXPECT_THROW(play_ef(ab, outside, exists, EFConfig{0, 1}), std::invalid_argument);
}

TEST(EFGame, RandomChallengerIsReproducible) {
  const auto frag = oracle::frag0_condition().frag;
  const auto ab = make_AB(frag, {ord("0"), ord("1")}, pool_value_cap(frag, 2, 6));
  Rng rng(3);
  const auto pool = random_pool(frag, 6, rng);
  auto run = [&] {
    RandomEFChallenger forall(ab, pool, 4, 99);
    MorassEFStrategy exists(ab);
    return play_ef(ab, forall, exists, EFConfig{8, 4});
  };
  const auto a = run();
  const auto b = run();
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t k = 0; k < a.rounds.size(); ++k) {
    EXPECT_EQ(a.rounds[k].challenge, b.rounds[k].challenge);
    EXPECT_EQ(a.rounds[k].response, b.rounds[k].response);
  }
}

TEST(EFGame, InteractiveMenuAndReprompt) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  std::istringstream in("z9\na0 a0 a0\na0\n\nquit\n");
  std::ostringstream out;
  InteractiveEFChallenger forall(ab, {ord("5"), ord("w + 5")}, 2, in, out);
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{4, 2});
  EXPECT_EQ(t.outcome, GameOutcome::kExistsWins);
  ASSERT_EQ(t.rounds.size(), 4u);
  EXPECT_EQ(t.rounds[0].challenge.from_a.size(), 1u);
  EXPECT_TRUE(t.rounds[1].challenge.from_a.empty());
  EXPECT_NE(out.str().find("illegal move"), std::string::npos);
  EXPECT_NE(out.str().find("[0]"), std::string::npos);
}

TEST(EFProperty, StrategyIsSoundAgainstRandomAdversaries) {
  const auto conds = oracle::built_conditions(10, 61);
  Rng rng(8);
  for (std::size_t g = 0; g < conds.size(); ++g) {
    const auto& frag = conds[g].frag;
    const auto ab = make_AB(frag, {ord("0"), ord("1")}, pool_value_cap(frag, 2, 5));
    const auto pool = random_pool(frag, 5, rng);
    RandomEFChallenger forall(ab, pool, 4, g);
    MorassEFStrategy exists(ab);
    const auto t = play_ef(ab, forall, exists, EFConfig{8, 4});
    ASSERT_EQ(t.outcome, GameOutcome::kExistsWins) << t.diagnostic << exists.failure();
    for (const auto& r : t.rounds) {
      ASSERT_TRUE(check_partial_iso(r.response, ab.a, ab.b));
      const auto cls = classify_partial_iso(r.response, ab.a, ab.b);
      ASSERT_TRUE(cls.coherent) << cls.note;
      ASSERT_EQ(cls.n_psi, std::size_t{1});
    }
    for (const auto& f : exists.simulation()) ASSERT_TRUE(in_family(frag, f));
  }
}

}  // namespace
}  // namespace morasslab
