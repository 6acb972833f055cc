#include <benchmark/benchmark.h>

#include "gclab/oracle.hpp"

namespace {

gclab::GridKernel make_kernel(int n) {
    return gclab::build_kernel(gclab::ScalarMap::tanh_map(2.0),
                               gclab::ComponentDensity::gaussian(), 10.0, n,
                               gclab::QuadRule::GaussLegendre);
}

void BM_BuildKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto k = make_kernel(n);
        benchmark::DoNotOptimize(k.tau_q());
    }
}

void BM_StationaryDensity(benchmark::State& state) {
    const auto k = make_kernel(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto st = gclab::stationary_density(k, 1e-13);
        benchmark::DoNotOptimize(st.f.data());
    }
}

void BM_TiltedEigenvalue(benchmark::State& state) {
    const auto k = make_kernel(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto te = gclab::tilted_eigenvalue(k, 0.5);
        benchmark::DoNotOptimize(te.scgf);
    }
}

}  // namespace

BENCHMARK(BM_BuildKernel)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StationaryDensity)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TiltedEigenvalue)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
