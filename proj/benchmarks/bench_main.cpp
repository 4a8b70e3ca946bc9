#include <benchmark/benchmark.h>

#include "circlayout/layout.hpp"
#include "circlayout/metrics.hpp"
#include "circlayout/sampling.hpp"
#include "circlayout/spectral.hpp"
#include "circlayout/trial.hpp"

namespace {

using namespace circlayout;

RandomGraphInstance instance_of(int n) {
  const auto model = CirculantModel::from_density(n, 1.0, 0.1, 0.5);
  return relabel(sample(model, Seed{1}), Seed{2});
}

void BM_TopEigenpairs(benchmark::State& state) {
  const auto instance = instance_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenpairs(instance.adjacency, 4));
}
BENCHMARK(BM_TopEigenpairs)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RecoverLayout(benchmark::State& state) {
  const auto instance = instance_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recover_layout(instance.adjacency));
}
BENCHMARK(BM_RecoverLayout)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_KendallDistance(benchmark::State& state) {
  Rng rng(Seed{3});
  const auto sigma = random_permutation(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_distance(sigma));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallDistance)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

void BM_CircularDistance(benchmark::State& state) {
  Rng rng(Seed{4});
  const auto n = static_cast<int>(state.range(0));
  const auto sigma = random_permutation(static_cast<std::size_t>(n), rng);
  const int k = k_from_beta(n, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(d_k(sigma, k));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CircularDistance)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

void BM_AlignToTruth(benchmark::State& state) {
  Rng rng(Seed{5});
  const auto n = static_cast<std::size_t>(state.range(0));
  const CircularOrder order{random_permutation(n, rng), 1, 0};
  const auto truth = random_permutation(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(align_to_truth(order, truth));
}
BENCHMARK(BM_AlignToTruth)->Arg(1000)->Arg(10000);

void BM_Trial(benchmark::State& state) {
  const auto model = CirculantModel::from_density(static_cast<int>(state.range(0)), 1.0, 0.1, 0.5);
  const TrialSpec spec{model, Seed{6}, {1, 5}, 5, true};
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(spec));
}
BENCHMARK(BM_Trial)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
