#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lmtest/bandwidth.hpp"
#include "lmtest/hac.hpp"
#include "lmtest/memest.hpp"
#include "lmtest/nulldist.hpp"
#include "lmtest/pipeline.hpp"
#include "lmtest/rng.hpp"
#include "lmtest/simgen.hpp"
#include "lmtest/vstat.hpp"

using namespace lmtest;

namespace {

TimeSeries make_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> v(n);
  for (double& x : v) x = gauss(rng);
  return TimeSeries(std::move(v));
}

void BM_VStatistic(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(v_statistic(s));
}
BENCHMARK(BM_VStatistic)->Arg(1024)->Arg(4096)->Arg(65536);

void BM_BartlettHac(benchmark::State& state) {
  const auto s = make_series(4096, 2);
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bartlett_hac(s, s, q).value);
}
BENCHMARK(BM_BartlettHac)->Arg(0)->Arg(10)->Arg(100);

void BM_LocalWhittle(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_d(s).d_raw);
}
BENCHMARK(BM_LocalWhittle)->Arg(1024)->Arg(4096);

void BM_GenFarima(benchmark::State& state) {
  FarimaSpec spec;
  spec.d = 0.3;
  spec.ar = {0.5};
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_farima(spec, n, default_burn_in(n), ++seed));
}
BENCHMARK(BM_GenFarima)->Arg(1024)->Arg(4096);

void BM_AdaptiveBandwidth(benchmark::State& state) {
  FarimaSpec spec;
  spec.ar = {0.6};
  const auto pair = gen_bivariate(spec, spec, {}, 4096, 2048, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(adaptive_q(pair, 0.1, 0.15).q_hat);
}
BENCHMARK(BM_AdaptiveBandwidth);

void BM_BridgePairDraw(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const FgnSampler sampler(0.2, n);
  auto rng = make_stream(5, 0);
  std::vector<double> a, b;
  for (auto _ : state) {
    sampler.sample_two(rng, a, b);
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_BridgePairDraw)->Arg(1024)->Arg(4096);

void BM_FullTest(benchmark::State& state) {
  FarimaSpec s1, s2;
  s1.d = 0.2;
  s2.d = 0.2;
  const auto pair = gen_bivariate(s1, s2, {}, 4096, 2048, 21);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_two_sample_test(pair, {}).t_value);
}
BENCHMARK(BM_FullTest);

}  // namespace

BENCHMARK_MAIN();
