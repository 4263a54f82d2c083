#include <benchmark/benchmark.h>

#include "morasslab/forcing.hpp"
#include "morasslab/morass.hpp"
#include "morasslab/sampling.hpp"

namespace {

using namespace morasslab;

/// A condition built from `tasks` random targets with a fixed seed.
Condition built(std::uint32_t tasks) {
  Rng rng(tasks);
  TaskShape shape;
  shape.max_tasks = tasks;
  return build_fragment(seed_condition(), random_tasks(shape, rng), 16);
}

void BM_BuildFragment(benchmark::State& state) {
  Rng rng(5);
  for (auto _ : state) {
    auto tasks = random_tasks(TaskShape{}, rng);
    benchmark::DoNotOptimize(build_fragment(seed_condition(), tasks, 16));
  }
}
BENCHMARK(BM_BuildFragment);

void BM_ValidateCondition(benchmark::State& state) {
  const auto p = built(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_condition(p));
  state.SetLabel("height " + std::to_string(p.height()));
}
BENCHMARK(BM_ValidateCondition)->Arg(2)->Arg(6);

void BM_Predecessors(benchmark::State& state) {
  const auto p = built(6);
  Rng rng(2);
  std::vector<Ordinal> xs;
  for (int k = 0; k < 256; ++k) xs.push_back(random_ordinal_below(p.frag.top_theta(), rng));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(predecessors(p.frag, xs[k++ % 256]));
}
BENCHMARK(BM_Predecessors);

void BM_MuUncached(benchmark::State& state) {
  const auto p = built(6);
  Rng rng(3);
  std::vector<Ordinal> xs;
  for (int k = 0; k < 256; ++k) xs.push_back(random_ordinal_below(p.frag.top_theta(), rng));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu(p.frag, xs[k % 256], xs[(k * 5 + 1) % 256]));
    ++k;
  }
}
BENCHMARK(BM_MuUncached);

void BM_MuCached(benchmark::State& state) {
  const auto p = built(6);
  PredecessorCache cache(p.frag);
  Rng rng(3);
  std::vector<Ordinal> xs;
  for (int k = 0; k < 256; ++k) xs.push_back(random_ordinal_below(p.frag.top_theta(), rng));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.mu(xs[k % 256], xs[(k * 5 + 1) % 256]));
    ++k;
  }
}
BENCHMARK(BM_MuCached);

}  // namespace
