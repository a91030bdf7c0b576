#include <benchmark/benchmark.h>

#include "qcpl/ncwords.hpp"
#include "qcpl/pullback.hpp"
#include "qcpl/qcp.hpp"

using namespace qcpl;

static void BM_NormalizeProduct(benchmark::State& state) {
    auto [x1, x2] = build_generators();
    NCElement lhs = x1.adjoint() * x1;
    NCElement rhs = x2.adjoint() * x2;
    for (auto _ : state) {
        NCElement prod = lhs * rhs;
        benchmark::DoNotOptimize(prod);
    }
}
BENCHMARK(BM_NormalizeProduct);

static void BM_SymbolicSuite(benchmark::State& state) {
    for (auto _ : state) {
        auto checks = symbolic_identity_suite();
        benchmark::DoNotOptimize(checks);
    }
}
BENCHMARK(BM_SymbolicSuite);

static void BM_HermitianEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TruncationContext ctx(2.0, 1.0, Complex(1.0, 0.0), n);
    auto [x1, x2] = build_x_pair(ctx);
    Matrix g = x1.adjoint() * x1;
    for (auto _ : state) {
        auto f = hermitian_eig(g);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TruncationContext ctx(2.0, 1.0, Complex(1.0, 0.0), n);
    for (auto _ : state) {
        auto rep = run_decomposition(ctx, n / 8);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_Pipeline)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond);

static void BM_SymbolEstimate(benchmark::State& state) {
    TruncationContext ctx(2.0, 1.0, Complex(1.0, 0.0), 256, 1e-10, 64);
    Pipeline pipe = run_pipeline(ctx, 40);
    Matrix g = pipe.x1.adjoint() * pipe.x1;
    for (auto _ : state) {
        auto s = symbol_estimate(g, pipe.basis, 1, 3);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_SymbolEstimate);

BENCHMARK_MAIN();
