#include <benchmark/benchmark.h>

#include <map>

#include "waso/cross_entropy.hpp"
#include "waso/sampling.hpp"
#include "waso/synth.hpp"

namespace {

const waso::SocialGraph& graph(std::size_t n) {
  static std::map<std::size_t, waso::SocialGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, waso::synth::synthesize({.nodes = n, .seed = 1})).first;
  return it->second;
}

void BM_ExpandUniform(benchmark::State& state) {
  const auto& g = graph(10000);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::uint64_t q = 0;
  for (auto _ : state) {
    waso::RngStream rng(1, 0, 0, q++);
    benchmark::DoNotOptimize(waso::expand_uniform(g, 0, k, rng));
  }
}
BENCHMARK(BM_ExpandUniform)->Arg(5)->Arg(30)->Arg(100);

void BM_ExpandWeighted(benchmark::State& state) {
  const auto& g = graph(10000);
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto p = waso::init_selection_probability(g.size(), 0, k);
  std::uint64_t q = 0;
  for (auto _ : state) {
    waso::RngStream rng(1, 0, 0, q++);
    benchmark::DoNotOptimize(waso::expand_weighted(g, 0, k, p, rng));
  }
}
BENCHMARK(BM_ExpandWeighted)->Arg(5)->Arg(30)->Arg(100);

void BM_ExpandGreedy(benchmark::State& state) {
  const auto& g = graph(10000);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::uint64_t q = 0;
  for (auto _ : state) {
    waso::RngStream rng(1, 0, 0, q++);
    benchmark::DoNotOptimize(waso::expand_greedy(g, 0, k, rng));
  }
}
BENCHMARK(BM_ExpandGreedy)->Arg(5)->Arg(30);

}  // namespace
