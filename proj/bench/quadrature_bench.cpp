// Serial reference vs OpenMP quadrature on the oracle workloads. Set
// INFOGEO_THREADS to cap the parallel worker count.

#include "infogeo/oracle.hpp"
#include "infogeo/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace infogeo;

namespace {

Point bench_point() {
    Matrix d(2, 2);
    d << 2.0, 0.5, 0.5, 1.0;
    Vector u(2);
    u << 0.3, -0.2;
    return Point(SpdMatrix(d), u);
}

Execution mode_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_normalization(benchmark::State& state) {
    const FamilyParams fp(2, 0.95);
    const Point pt = bench_point();
    const auto grid = make_grid(fp, pt, static_cast<int>(state.range(1)));
    const NodeFunction f = [&](const QuadratureNode& node) { return density(fp, pt, node.x); };
    for (auto _ : state) benchmark::DoNotOptimize(integrate(grid, f, mode_of(state)));
    state.counters["nodes"] = static_cast<double>(grid.nodes.size());
    state.counters["workers"] = mode_of(state) == Execution::serial ? 1 : worker_count();
}

void BM_numeric_fisher(benchmark::State& state) {
    const FamilyParams fp(2, 1.5);
    const Point pt = bench_point();
    Matrix x(2, 2);
    x << 0.3, -0.2, -0.2, 0.7;
    const Tangent a(SymMatrix(x), Vector::Constant(2, 0.4));
    for (auto _ : state)
        benchmark::DoNotOptimize(numeric_fisher(fp, pt, a, a, static_cast<int>(state.range(1)), mode_of(state)));
    state.counters["workers"] = mode_of(state) == Execution::serial ? 1 : worker_count();
}

}  // namespace

// range(0): 0 = serial, 1 = parallel; range(1): grid resolution.
BENCHMARK(BM_normalization)->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_numeric_fisher)->ArgsProduct({{0, 1}, {8, 16}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
