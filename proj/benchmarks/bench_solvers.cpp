#include <benchmark/benchmark.h>

#include "waso/solvers.hpp"
#include "waso/synth.hpp"

namespace {

void run(benchmark::State& state, waso::Algorithm algo) {
  static const waso::SocialGraph g = waso::synth::synthesize({.nodes = 5000, .seed = 2});
  waso::SolverConfig c;
  c.k = static_cast<std::size_t>(state.range(0));
  c.budget = 1000;
  c.stages = 4;
  c.algorithm = algo;
  for (auto _ : state) {
    benchmark::DoNotOptimize(waso::solve(g, c).solution.willingness);
  }
}

void BM_DGreedy(benchmark::State& s) { run(s, waso::Algorithm::DGreedy); }
void BM_RGreedy(benchmark::State& s) { run(s, waso::Algorithm::RGreedy); }
void BM_Cbas(benchmark::State& s) { run(s, waso::Algorithm::Cbas); }
void BM_CbasNd(benchmark::State& s) { run(s, waso::Algorithm::CbasNd); }
void BM_CbasNdGaussian(benchmark::State& s) { run(s, waso::Algorithm::CbasNdGaussian); }

BENCHMARK(BM_DGreedy)->Arg(10)->Arg(50);
BENCHMARK(BM_RGreedy)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cbas)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CbasNd)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CbasNdGaussian)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
