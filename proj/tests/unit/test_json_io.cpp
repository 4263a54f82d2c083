#include <gtest/gtest.h>

#include "morasslab/json_io.hpp"
#include "oracles.hpp"

namespace morasslab {
namespace {

using oracle::ord;

template <typename T, typename Read>
void expect_round_trip(const T& value, Read read) {
  const auto j = io::to_json(value);
  EXPECT_EQ(read(io::Json::parse(j.dump())), value) << j.dump();
}

TEST(Json, OrdinalAndMap) {
  EXPECT_EQ(io::to_json(ord("w*2 + 3")), "w*2 + 3");
  expect_round_trip(ord("w^2 + 1"), io::ordinal_from_json);
  expect_round_trip(make_shift(ord("w*2"), kOmega), io::map_from_json);
  EXPECT_THROW(io::ordinal_from_json(io::Json(5)), io::FormatError);
  EXPECT_THROW(io::ordinal_from_json(io::Json("w*")), io::FormatError);
}

TEST(Json, FragmentAndCondition) {
  const auto p = build_fragment(seed_condition(), {{1, Ordinal{}}, {2, Ordinal{}}}, 16);
  expect_round_trip(p.frag, io::fragment_from_json);
  expect_round_trip(p, io::condition_from_json);
  const auto j = io::to_json(p);
  EXPECT_EQ(j["blocks"]["2"], "w*2");
  EXPECT_EQ(j["frag"]["height"], 2);
  EXPECT_THROW(io::condition_from_json(io::Json::object()), io::FormatError);
}

TEST(Json, Tasks) {
  const std::vector<BlockPoint> tasks{{1, Ordinal{}}, {2, ord("w + 1")}};
  EXPECT_EQ(io::tasks_from_json(io::tasks_to_json(tasks)), tasks);
  EXPECT_EQ(io::tasks_from_json(io::Json::parse(R"([[1, "0"], [2, "w + 1"]])")), tasks);
  EXPECT_THROW(io::tasks_from_json(io::Json::parse(R"([[1]])")), io::FormatError);
}

TEST(Json, ValidationReport) {
  const MorassFragment bad({LevelData{kOmega, Ordinal{}, kOmega}}, ord("w*3"));
  const auto j = io::to_json(validate_fragment(bad));
  EXPECT_FALSE(j["ok"].get<bool>());
  EXPECT_EQ(j["violations"][0]["kind"], "successor violation");
}

TEST(Json, PersistencyTranscript) {
  const auto frag = oracle::frag0();
  ScriptedChallenger forall({ord("w + 3"), ord("3")});
  MorassStrategy exists(frag);
  const auto t = play_persistency(frag, forall, exists, 2);
  const auto j = io::to_json(t);
  EXPECT_EQ(j["outcome"], "win-for-exists");
  const auto back = io::persistency_transcript_from_json(io::Json::parse(j.dump()));
  EXPECT_EQ(io::to_json(back), j);
  expect_round_trip(t.rounds.back().response, io::pfunc_from_json);
  EXPECT_THROW(io::outcome_from_string("draw"), io::FormatError);
}

TEST(Json, EFTranscript) {
  const auto ab = make_AB(oracle::frag0(), {ord("0"), ord("1")});
  const auto& c = *ab.a.universe;
  const SetElement x{make_layer_key({ord("3"), ord("w + 3")}), {1, 4}};
  ScriptedEFChallenger forall({EFChallenge{{ab.a.constant, CElement{x}}, {CElement{ord("5")}}}});
  MorassEFStrategy exists(ab);
  const auto t = play_ef(ab, forall, exists, EFConfig{2, 4});
  const auto j = io::to_json(t, c);
  const auto back = io::ef_transcript_from_json(io::Json::parse(j.dump()));
  EXPECT_EQ(io::to_json(back, c), j);
  ASSERT_EQ(back.rounds.size(), t.rounds.size());
  EXPECT_EQ(back.rounds[0].response, t.rounds[0].response);
  EXPECT_EQ(back.rounds[0].challenge, t.rounds[0].challenge);
  EXPECT_EQ(io::to_json(CElement{x}, c)["members"][0], c.layer(x.layer)->bitstring(1));
}

TEST(Json, LayerCatalog) {
  const LayeredUniverse c(oracle::frag0(), 2);
  const auto j = io::to_json(*c.layer(make_layer_key({ord("3"), ord("w + 3")})));
  EXPECT_EQ(j["size"], 7);
  EXPECT_EQ(j["bits"], 3);
  EXPECT_EQ(j["catalog"].size(), 7u);
  EXPECT_EQ(j["catalog"][0]["index"], "000");
}

}  // namespace
}  // namespace morasslab
