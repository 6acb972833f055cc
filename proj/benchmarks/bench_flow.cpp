#include <benchmark/benchmark.h>

#include "gclab/burgers.hpp"

namespace {

void BM_FlowMap(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const int substeps = static_cast<int>(state.range(1));
    gclab::FlowConfig cfg;
    cfg.nu = 0.5;
    cfg.substeps = substeps;
    cfg.h = gclab::SpectralField(N);
    cfg.h.set_cos(1, 1.0);
    gclab::BurgersFlow flow(cfg);
    const gclab::RngStream rng(1, 0);
    gclab::SpectralField u = gclab::random_direction(N, 1.0, rng);
    for (auto _ : state) {
        u = flow(u);
        benchmark::DoNotOptimize(u.coeffs().data());
    }
    state.SetItemsProcessed(state.iterations() * substeps);
}

}  // namespace

BENCHMARK(BM_FlowMap)->Args({32, 128})->Args({64, 256})->Unit(benchmark::kMillisecond);
