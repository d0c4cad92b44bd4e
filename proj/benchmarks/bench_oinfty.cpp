#include <benchmark/benchmark.h>

#include "oinfty/classify.hpp"

using namespace oinfty;

namespace {

void BM_MembershipZ2(benchmark::State& state) {
  const auto g = GroupSpec::free(2);
  Semigroup sg(WeightSystem(g, {}, {g.elem({3, 1}), g.elem({2, -1}), g.elem({-1, 4})}));
  const auto x = g.elem({state.range(0), state.range(0) / 2});
  for (auto _ : state) benchmark::DoNotOptimize(sg.member(x));
}
BENCHMARK(BM_MembershipZ2)->Arg(5)->Arg(20)->Arg(80);

void BM_EnumeratePairs(benchmark::State& state) {
  const GroupSpec g(0, {2, 4});
  Semigroup sg(WeightSystem(g, {g.elem({1, 1})}, {g.elem({0, 2})}));
  for (auto _ : state) benchmark::DoNotOptimize(count_pairs(sg));
}
BENCHMARK(BM_EnumeratePairs);

void BM_IdealLattice(benchmark::State& state) {
  const GroupSpec g(0, {2, 2, 2});
  Semigroup sg(WeightSystem(g, {g.elem({1, 0, 0})}, {g.elem({0, 1, 1})}));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ideals(sg).nodes.size());
}
BENCHMARK(BM_IdealLattice);

void BM_HSetGenerated(benchmark::State& state) {
  const auto g = GroupSpec::free(1);
  Semigroup sg(WeightSystem(g, {g.elem({0})}, {g.elem({2}), g.elem({3})}));
  const auto x = GammaSet::principal(sg, g.zero());
  for (auto _ : state) benchmark::DoNotOptimize(h_set(x).to_string());
}
BENCHMARK(BM_HSetGenerated);

}  // namespace

BENCHMARK_MAIN();
