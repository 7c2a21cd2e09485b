#include <benchmark/benchmark.h>

#include "stripcalc/functions.hpp"
#include "stripcalc/geometry.hpp"
#include "stripcalc/harmonic.hpp"
#include "stripcalc/measures.hpp"
#include "stripcalc/serialize.hpp"

using namespace stripcalc;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_contour(benchmark::State& st) {
  GroupGenerator A =
      model_from_json({{"kind", "random-diagonalizable"}, {"n", 16}, {"p", 2}, {"omega0", 0.5}, {"seed", 1}});
  StripFunction f = make_strip_function("decay_pow:1.5,2", 1.0);
  ContourConfig cfg;
  cfg.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(cauchy_integral(f, A, cfg).value);
}

void BM_hille_phillips(benchmark::State& st) {
  GroupGenerator A =
      model_from_json({{"kind", "random-diagonalizable"}, {"n", 16}, {"p", 2}, {"omega0", 0.3}, {"seed", 2}});
  WeightedMeasure mu = gamma_density_measure(0.6, 1.5) + gamma_density_measure(1.7, 2.5) + dirac(0.5);
  for (auto _ : st) benchmark::DoNotOptimize(hille_phillips(A, mu, mode(st)));
}

void BM_rademacher_type(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(estimate_type_constant({1, 16}, 2, 16, 16, 2048, 1, mode(st)).estimate);
}

void BM_rbound(benchmark::State& st) {
  std::vector<Mat> ops;
  for (int k = 0; k < 6; ++k) ops.push_back(Mat::Random(32, 32));
  for (auto _ : st) benchmark::DoNotOptimize(estimate_r_bound(ops, {1, 32}, 6, 16, 512, 1, mode(st)).estimate);
}

void BM_multiplier_batch(benchmark::State& st) {
  ScalarSymbol m = [](double x) { return cplx(std::pow(1 + x * x, -0.125)); };
  for (auto _ : st) benchmark::DoNotOptimize(multiplier_bench_lp_lq(m, 4.0 / 3, 2, 32, 1, {13, 64}, mode(st)).max_ratio);
}

}  // namespace

BENCHMARK(BM_contour)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hille_phillips)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rademacher_type)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rbound)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiplier_batch)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
