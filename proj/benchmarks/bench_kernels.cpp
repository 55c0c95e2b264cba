#include <benchmark/benchmark.h>

#include "rnkit/construction.hpp"
#include "rnkit/random.hpp"
#include "rnkit/weyl.hpp"

namespace {

using namespace rnkit;

void BM_MatPower(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const PositiveElement h = random_positive(rng, {n}, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(mat_power(h, Complex(0.3, 1.1)));
}
BENCHMARK(BM_MatPower)->Arg(8)->Arg(64)->Arg(256);

void BM_Congruence(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const PositiveElement d = random_positive(rng, {n}, 10.0);
  const PositiveElement h = random_positive(rng, {n}, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(congruence(d, h));
}
BENCHMARK(BM_Congruence)->Arg(8)->Arg(64)->Arg(256);

void BM_CentralityDefect(benchmark::State& state) {
  Rng rng(3);
  const Element x = random_element(rng, {static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(centrality_defect(x));
}
BENCHMARK(BM_CentralityDefect)->Arg(16)->Arg(64)->Arg(256);

void BM_SmearElement(benchmark::State& state) {
  Rng rng(4);
  const Weight phi(random_positive(rng, {4, 4}, 1.0));
  const PositiveElement delta = random_commuting_positive(rng, phi.density(), 1.0);
  const InvariancePair pair =
      InvariancePair::certify(phi, delta, PositiveElement::scalar(phi.algebra(), 1.0), Mode::approximate);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(smear_element(pair, n));
}
BENCHMARK(BM_SmearElement)->Arg(1)->Arg(4)->Arg(8);

void BM_WeylScalarCase(benchmark::State& state) {
  const WeylGrid g = build_grid(static_cast<int>(state.range(0)), 16.0);
  for (auto _ : state) {
    const TestbedCase c = case_scenario(TestbedCaseId::scalar, g);
    benchmark::DoNotOptimize(weyl_invariance_residual(c, 1.0, 1.0, c.probe));
  }
}
BENCHMARK(BM_WeylScalarCase)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
