#include <benchmark/benchmark.h>

#include "gsops/analysis.hpp"
#include "gsops/basis.hpp"
#include "gsops/exactpoly.hpp"
#include "gsops/function_spec.hpp"
#include "gsops/operators.hpp"
#include "gsops/quadrature.hpp"

using namespace gsops;

static void BM_BernsteinVector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.137;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bernstein_vector(n, x));
    x = x < 0.9 ? x + 1e-3 : 0.137;
  }
}
BENCHMARK(BM_BernsteinVector)->RangeMultiplier(4)->Range(8, 2048);

static void BM_GaussLegendre(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre(m));
}
BENCHMARK(BM_GaussLegendre)->RangeMultiplier(4)->Range(8, 512);

static void BM_TailSums(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tail_sums(n));
}
BENCHMARK(BM_TailSums)->Arg(2)->Arg(100)->Arg(10000);

static void BM_ApplyUtildeNumeric(benchmark::State& state) {
  const auto& f = catalog_entry("exp");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apply_Utilde(f, n, kDefaultTol));
}
BENCHMARK(BM_ApplyUtildeNumeric)->RangeMultiplier(4)->Range(4, 256);

static void BM_ApplyUtildeExact(benchmark::State& state) {
  const RationalPoly& p = *catalog_entry("t5_minus_t2").exact();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apply_Utilde_exact(p, n));
}
BENCHMARK(BM_ApplyUtildeExact)->RangeMultiplier(2)->Range(4, 64);

static void BM_CommuteCheckExact(benchmark::State& state) {
  const RationalPoly& p = *catalog_entry("t3").exact();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(commute_check_exact(p, n, n + 1));
}
BENCHMARK(BM_CommuteCheckExact)->Arg(4)->Arg(8)->Arg(16);

static void BM_SupNormForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = dtilde_form(apply_Utilde(catalog_entry("sin_pi"), n, kDefaultTol));
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm(p));
}
BENCHMARK(BM_SupNormForm)->RangeMultiplier(4)->Range(4, 256);

static void BM_LebesgueBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_bound(n));
}
BENCHMARK(BM_LebesgueBound)->RangeMultiplier(4)->Range(4, 256);

static void BM_BnDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_bn_decomposition(n));
}
BENCHMARK(BM_BnDecomposition)->Arg(8)->Arg(32)->Arg(64);

static void BM_KfunctionalSandwich(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& f = catalog_entry("abs_pow52");
  for (auto _ : state) benchmark::DoNotOptimize(kfunctional_sandwich(f, n, default_candidate_ms(n)));
}
BENCHMARK(BM_KfunctionalSandwich)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
