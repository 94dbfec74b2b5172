#include <benchmark/benchmark.h>

#include "lane8/bench.hpp"
#include "lane8/greens.hpp"
#include "lane8/problems.hpp"
#include "lane8/solver.hpp"

namespace {

using lane8::GridFunction;
using lane8::QuadPlan;
using lane8::Real128;
using lane8::UniformGrid;

template <class R>
void BM_StencilTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        UniformGrid<R> g(n);
        auto plan = QuadPlan<R>::beta_one(g);
        benchmark::DoNotOptimize(plan);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StencilTable<double>)->RangeMultiplier(2)->Range(8, 128)->Complexity();
BENCHMARK(BM_StencilTable<Real128>)->RangeMultiplier(2)->Range(8, 128)->Complexity();

template <class R>
void BM_Method1Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    UniformGrid<R> g(n);
    auto plan = QuadPlan<R>::beta_one(g);
    auto phi = lane8::sample(g, [](R x) { return exp(x); });
    for (auto _ : state) {
        auto u = method1_step(plan, phi, R(0));
        benchmark::DoNotOptimize(u);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Method1Step<double>)->RangeMultiplier(2)->Range(8, 128)->Complexity();
BENCHMARK(BM_Method1Step<Real128>)->RangeMultiplier(2)->Range(8, 128)->Complexity();

template <class R>
void BM_Method2Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    UniformGrid<R> g(n);
    auto plan = QuadPlan<R>::beta_integer(g, 2);
    auto phi = lane8::sample(g, [](R x) { return exp(x); });
    for (auto _ : state) {
        auto u = method2_step(plan, phi, R(1));
        benchmark::DoNotOptimize(u);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Method2Step<double>)->RangeMultiplier(2)->Range(8, 128)->Complexity();
BENCHMARK(BM_Method2Step<Real128>)->RangeMultiplier(2)->Range(8, 128)->Complexity();

template <class R>
void BM_SolveEx1(benchmark::State& state) {
    const auto& ex1 = lane8::find_example<R>("ex1");
    lane8::SolveConfig<R> cfg;
    cfg.intervals = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rep = lane8::solve(ex1.spec, cfg);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_SolveEx1<double>)->Arg(32)->Arg(64);
BENCHMARK(BM_SolveEx1<Real128>)->Arg(32)->Arg(64);

void BM_OracleSolve(benchmark::State& state) {
    UniformGrid<Real128> g(static_cast<int>(state.range(0)));
    auto phi = lane8::sample(g, [](Real128 x) { return exp(x); });
    for (auto _ : state) {
        auto u =
            lane8::oracle_solve_linear(lane8::Kernel<Real128>{Real128(2)}, phi, Real128(0), 1024);
        benchmark::DoNotOptimize(u);
    }
}
BENCHMARK(BM_OracleSolve)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
