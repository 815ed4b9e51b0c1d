#include <benchmark/benchmark.h>

#include "rsl/chaos.hpp"
#include "rsl/rng.hpp"
#include "rsl/sampling.hpp"
#include "rsl/stein.hpp"

namespace {

rsl::Functional random_functional(int m, std::uint64_t seed) {
  rsl::CounterRng rng(seed, 0);
  std::vector<double> probs(static_cast<std::size_t>(m));
  for (double& p : probs) p = 0.05 + 0.9 * rng.next_unit();
  const rsl::SpacePtr space = rsl::make_space(probs);
  std::vector<double> vals(space->state_count());
  for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
  return rsl::Functional(space, vals);
}

void BM_ChaosTransform(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rsl::Functional f = random_functional(m, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::to_chaos(f));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_ChaosTransform)->Arg(10)->Arg(14)->Arg(18)->Arg(20);

void BM_BoundTerms(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rsl::Functional f = random_functional(m, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::bound_terms(f));
  }
}
BENCHMARK(BM_BoundTerms)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_KolR1(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rsl::Functional f = rsl::standardize(random_functional(m, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::kol_r1(f));
  }
}
BENCHMARK(BM_KolR1)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_DegreeSampler(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsl::Model model = rsl::DegreeModel{n, 1.0 / n, 0};
  rsl::ModelSampler sampler(model);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rsl::CounterRng(7, i++)));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DegreeSampler)->Arg(256)->Arg(1024);

void BM_TwoRunsSampler(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsl::Model model = rsl::TwoRunsModel{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  rsl::ModelSampler sampler(model);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rsl::CounterRng(7, i++)));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TwoRunsSampler)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
