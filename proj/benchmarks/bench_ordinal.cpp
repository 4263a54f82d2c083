#include <benchmark/benchmark.h>

#include "morasslab/ordinal.hpp"
#include "morasslab/sampling.hpp"

namespace {

using morasslab::Ordinal;

std::vector<Ordinal> sample(std::size_t n) {
  morasslab::Rng rng(1);
  std::vector<Ordinal> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(morasslab::random_ordinal_below(Ordinal::omega_power(3), rng));
  return out;
}

void BM_OrdinalAdd(benchmark::State& state) {
  const auto xs = sample(256);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[k % 256] + xs[(k * 7 + 3) % 256]);
    ++k;
  }
}
BENCHMARK(BM_OrdinalAdd);

void BM_OrdinalCompare(benchmark::State& state) {
  const auto xs = sample(256);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[k % 256] < xs[(k * 7 + 3) % 256]);
    ++k;
  }
}
BENCHMARK(BM_OrdinalCompare);

void BM_LeftSubtract(benchmark::State& state) {
  const auto xs = sample(256);
  std::size_t k = 0;
  for (auto _ : state) {
    const Ordinal& a = xs[k % 256];
    benchmark::DoNotOptimize(morasslab::left_subtract(a, a + xs[(k * 7 + 3) % 256]));
    ++k;
  }
}
BENCHMARK(BM_LeftSubtract);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Ordinal::parse("w^2*3 + w*17 + 42"));
}
BENCHMARK(BM_Parse);

}  // namespace
