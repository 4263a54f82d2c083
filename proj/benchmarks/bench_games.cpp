#include <benchmark/benchmark.h>

#include "morasslab/efgame.hpp"
#include "morasslab/forcing.hpp"
#include "morasslab/persistency.hpp"

namespace {

using namespace morasslab;

Condition fixture() {
  Rng rng(11);
  return build_fragment(seed_condition(), random_tasks(TaskShape{}, rng), 16);
}

void BM_PersistencyGame(benchmark::State& state) {
  const auto p = fixture();
  const auto rounds = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RandomChallenger forall(p.frag, seed++);
    MorassStrategy exists(p.frag);
    benchmark::DoNotOptimize(play_persistency(p.frag, forall, exists, rounds));
  }
}
BENCHMARK(BM_PersistencyGame)->Arg(16)->Arg(64);

void BM_InFamily(benchmark::State& state) {
  const auto p = fixture();
  RandomChallenger forall(p.frag, 1);
  MorassStrategy exists(p.frag);
  const auto t = play_persistency(p.frag, forall, exists, static_cast<std::size_t>(state.range(0)));
  const PFunc& f = t.rounds.back().response;
  for (auto _ : state) {
    PredecessorCache cache(p.frag);
    benchmark::DoNotOptimize(in_family(cache, f));
  }
}
BENCHMARK(BM_InFamily)->Arg(8)->Arg(32);

void BM_EFGame(benchmark::State& state) {
  const auto p = fixture();
  const std::vector<Ordinal> base{Ordinal::finite(0), Ordinal::finite(1)};
  const auto ab = make_AB(p.frag, base, pool_value_cap(p.frag, base.size(), 6));
  Rng rng(4);
  const auto pool = random_pool(p.frag, 6, rng);
  const EFConfig config{static_cast<std::size_t>(state.range(0)), 4};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RandomEFChallenger forall(ab, pool, config.move_cap, seed++);
    MorassEFStrategy exists(ab);
    benchmark::DoNotOptimize(play_ef(ab, forall, exists, config));
  }
}
BENCHMARK(BM_EFGame)->Arg(4)->Arg(16);

}  // namespace
