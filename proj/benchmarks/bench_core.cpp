#include "cvx/expr.hpp"
#include "cvx/inequalities.hpp"
#include "cvx/sandwich.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

cvx::SampledFunction wiggle(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    auto xs = cvx::expr::uniform_grid(-1, 1, n);
    std::vector<double> ys;
    for (double x : xs)
        ys.push_back(x * x + noise(rng));
    return {std::move(xs), std::move(ys)};
}

cvx::SampledFunction square(std::size_t n)
{
    return cvx::expr::sample(cvx::expr::parse("x^2"), -1, 1, n);
}

void BM_LowerConvexEnvelope(benchmark::State& state)
{
    const auto f = wiggle(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(cvx::lower_convex_envelope(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowerConvexEnvelope)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_AffineSeparator(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = square(n);
    const auto f = cvx::expr::sample(cvx::expr::parse("x^2-1"), -1, 1, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(cvx::find_affine_separator(f, g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AffineSeparator)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_ConditionIII(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = wiggle(n, 2);
    const auto g = wiggle(n, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(cvx::check_condition_iii(f, g));
}
BENCHMARK(BM_ConditionIII)->RangeMultiplier(4)->Range(64, 16384);

void BM_PopoviciuScan(benchmark::State& state)
{
    const auto f = square(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cvx::popoviciu_scan(f));
}
BENCHMARK(BM_PopoviciuScan)->DenseRange(11, 51, 20)->Unit(benchmark::kMillisecond);

void BM_ParseAndSample(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cvx::expr::sample(cvx::expr::parse("max(exp(x) - 1, x^2) / 2"), -1, 1, 1001));
}
BENCHMARK(BM_ParseAndSample);

} // namespace

BENCHMARK_MAIN();
