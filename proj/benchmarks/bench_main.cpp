#include <benchmark/benchmark.h>

#include <vector>

#include "fhc/carleman.hpp"
#include "fhc/constructor.hpp"
#include "fhc/expfun.hpp"
#include "fhc/expk_space.hpp"

namespace {

using namespace fhc;

constexpr ComplexPoint I{0.0, 1.0};

FunctionExpr dense_sum(long n) {
  const std::vector<FunctionExpr> t{FunctionExpr::block(0.5 * I)};
  return build_candidate(t, full_schedule(n), ConvexCompact::segment(-I, I)).expr;
}

std::vector<ComplexPoint> real_grid(std::size_t n, double x_max) {
  std::vector<ComplexPoint> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -x_max + 2.0 * x_max * double(i) / double(n - 1);
  return xs;
}

void BM_evaluate_loop(benchmark::State& state) {
  const auto f = dense_sum(state.range(0));
  const auto xs = real_grid(1024, 100.0);
  for (auto _ : state)
    for (const auto& x : xs) benchmark::DoNotOptimize(evaluate(f, x));
  state.SetItemsProcessed(state.iterations() * long(xs.size()));
}
BENCHMARK(BM_evaluate_loop)->Arg(16)->Arg(256);

void BM_evaluate_many(benchmark::State& state) {
  const auto f = dense_sum(state.range(0));
  const auto xs = real_grid(1024, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_many(f, xs));
  state.SetItemsProcessed(state.iterations() * long(xs.size()));
}
BENCHMARK(BM_evaluate_many)->Arg(16)->Arg(256);

void BM_norm_estimate(benchmark::State& state) {
  const auto f = FunctionExpr::block(0.5 * I);
  const ExpKNorm norm{ConvexCompact::segment(-I, I), 2};
  for (auto _ : state) benchmark::DoNotOptimize(norm_estimate(f, norm, double(state.range(0))));
}
BENCHMARK(BM_norm_estimate)->Arg(60)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_count_zeros(benchmark::State& state) {
  const auto f = FunctionExpr::sine_pi();
  const Box box{0.5, 0.5 + double(state.range(0)), -1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros(f, box));
}
BENCHMARK(BM_count_zeros)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_locate_zeros(benchmark::State& state) {
  const auto f = FunctionExpr::sine_pi();
  const Box box{0.5, 0.5 + double(state.range(0)), -1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(locate_zeros(f, box));
}
BENCHMARK(BM_locate_zeros)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_growth_check(benchmark::State& state) {
  const auto K = ConvexCompact::segment(-I, I);
  const auto c = build_candidate(enumerate_targets(1.0, 3), dyadic_schedule(3, state.range(0), 8), K);
  for (auto _ : state)
    benchmark::DoNotOptimize(growth_check(c, double(state.range(0)) / 2.0, GrowthSpec::power(2.0)));
}
BENCHMARK(BM_growth_check)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
