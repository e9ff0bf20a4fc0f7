#include <benchmark/benchmark.h>

#include "superosc/intertwine.hpp"

using namespace superosc;

static void BM_TheoremOne(benchmark::State& state) {
  const Representation rep = supercovariant_rep(static_cast<int>(state.range(0)), 1.3);
  const TheoremOneInput input = parse_theorem1_input("Bd*B + 1", rep.table);
  for (auto _ : state) benchmark::DoNotOptimize(build_theorem1(input, rep));
}
BENCHMARK(BM_TheoremOne)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TheoremTwo(benchmark::State& state) {
  const Representation rep = tensor_pair(static_cast<int>(state.range(0)), 1.3);
  const TheoremTwoInput input = parse_theorem2_input("qM2i*(1+b)", rep.table);
  for (auto _ : state) benchmark::DoNotOptimize(build_theorem2(input, rep));
}
BENCHMARK(BM_TheoremTwo)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Uniqueness(benchmark::State& state) {
  const Representation rep = supercovariant_rep(static_cast<int>(state.range(0)), 1.3);
  const IntertwinerResult r = build_theorem1(parse_theorem1_input("Bd*B", rep.table), rep);
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniqueness_oracle(rep, r.coefficients.at("G"), r.coefficients.at("D"), r.masked_levels));
  }
}
BENCHMARK(BM_Uniqueness)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TwoMode(benchmark::State& state) {
  const Representation rep = two_mode_rep(static_cast<int>(state.range(0)), 1.3);
  const TwoModeInput input = parse_two_mode_input("1", "bd2", "0", "0", rep.table);
  for (auto _ : state) benchmark::DoNotOptimize(build_two_mode(input, rep));
}
BENCHMARK(BM_TwoMode)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
