#include <benchmark/benchmark.h>

#include "superosc/random.hpp"
#include "superosc/rep.hpp"
#include "superosc/superalg.hpp"

using namespace superosc;

static void BM_BuildRep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(supercovariant_rep(dim, 1.3));
}
BENCHMARK(BM_BuildRep)->Arg(8)->Arg(16)->Arg(32);

static void BM_VerifySupercov(benchmark::State& state) {
  const Representation rep = supercovariant_rep(static_cast<int>(state.range(0)), 1.3);
  const AlgebraSpec spec = builtin_algebra("supercov");
  for (auto _ : state) benchmark::DoNotOptimize(verify(rep, spec, 1e-10));
}
BENCHMARK(BM_VerifySupercov)->Arg(8)->Arg(16)->Arg(32);

static void BM_VerifyTwoMode(benchmark::State& state) {
  const Representation rep = two_mode_rep(static_cast<int>(state.range(0)), 1.3);
  const AlgebraSpec spec = builtin_algebra("qmulti2");
  for (auto _ : state) benchmark::DoNotOptimize(verify(rep, spec, 1e-10));
}
BENCHMARK(BM_VerifyTwoMode)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Jacobi(benchmark::State& state) {
  Rng rng(42);
  const GradedTriple t = random_graded_triple(rng, 8, Parity::Odd, Parity::Odd, Parity::Even);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_check(t));
}
BENCHMARK(BM_Jacobi);
