#include <benchmark/benchmark.h>

#include "gclab/transition.hpp"

namespace {

void BM_SigmaSeries(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    gclab::NoiseModel noise(gclab::WeightSequence(N, 1.0, 1.0),
                            gclab::ComponentDensity::gaussian());
    const gclab::RngStream rng(3, 0);
    const auto u = gclab::random_direction(N, 1.0, rng, 0);
    const auto v = gclab::random_direction(N, 1.0, rng, N);
    const auto su = gclab::random_direction(N, 0.5, rng, 2 * N);
    const auto sv = gclab::random_direction(N, 0.5, rng, 3 * N);
    for (auto _ : state) {
        double s = gclab::sigma_series(noise, u, v, su, sv);
        benchmark::DoNotOptimize(s);
    }
}

void BM_LogShiftDensity(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    gclab::NoiseModel noise(gclab::WeightSequence(N, 1.0, 1.0),
                            gclab::ComponentDensity::gen_exp(1.0, 1.5, {0.1}));
    const gclab::RngStream rng(4, 0);
    const auto a = gclab::random_direction(N, 0.5, rng, 0);
    const auto u = gclab::random_direction(N, 1.0, rng, N);
    for (auto _ : state) {
        double s = gclab::log_shift_density(noise, a, u);
        benchmark::DoNotOptimize(s);
    }
}

}  // namespace

BENCHMARK(BM_SigmaSeries)->Arg(32)->Arg(64);
BENCHMARK(BM_LogShiftDensity)->Arg(32)->Arg(64);
