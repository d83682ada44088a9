#include <benchmark/benchmark.h>

#include "symdef/deformation/deformation.hpp"

using namespace symdef;

static void BM_ComposeDiffOp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DiffOp a(Rational(1, 3), Rational(1, 3));
  for (std::size_t i = 0; i <= n; ++i) a += DiffOp::monomial(Rational(1, 3), Rational(1, 3), i, n - i, Rational(static_cast<long>(i + 1)));
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, a));
}
BENCHMARK(BM_ComposeDiffOp)->Arg(4)->Arg(8)->Arg(16);

static void BM_CocycleCheckOmega(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(d2(cocycle_Omega(k)).is_zero());
}
BENCHMARK(BM_CocycleCheckOmega)->DenseRange(1, 4);

static void BM_CoboundarySolvePhi(benchmark::State& state) {
  const auto phi = cocycle_Phi(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coboundary_solve(phi).index());
}
BENCHMARK(BM_CoboundarySolvePhi)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_CohomologyDim(benchmark::State& state) {
  const auto kind = state.range(0) ? AlgebraKind::osp12 : AlgebraKind::sl2;
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_dim(Rational(-1, 2), Rational(3, 2), 1, kind).dim);
}
BENCHMARK(BM_CohomologyDim)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ObstructionClassical(benchmark::State& state) {
  const auto spec = DeformationSpec::resonant(Flavor::classical, state.range(0));
  const auto d = build_infinitesimal<DiffOp>(spec);
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_classes(d).generators.size());
}
BENCHMARK(BM_ObstructionClassical)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_ObstructionSuper(benchmark::State& state) {
  const auto spec = DeformationSpec::resonant(Flavor::super, state.range(0));
  const auto d = build_infinitesimal<SuperDiffOp>(spec);
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_classes(d).generators.size());
}
BENCHMARK(BM_ObstructionSuper)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
