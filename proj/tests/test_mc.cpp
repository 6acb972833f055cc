#include <doctest.h>

#include <cmath>

#include "gclab/oracle.hpp"
#include "gclab/rate.hpp"

using namespace gclab;

namespace {
// One-mode embedding of a gently tilted scalar model: soft enough that the
// direct estimator keeps a healthy effective sample size at the tested tilts.
TransitionModel embedded_tanh(double kappa) {
    return TransitionModel(make_scalar_embedding_flow(ScalarMap::tanh_map(kappa), 1),
                           NoiseModel(WeightSequence(1, 1.0, 0.0), ComponentDensity::gaussian()));
}

TransitionModel small_burgers() {
    FlowConfig cfg;
    cfg.nu = 0.5;
    cfg.substeps = 32;
    cfg.h = SpectralField(8);
    cfg.h.set_cos(1, 1.0);
    return TransitionModel(make_burgers_flow(cfg),
                           NoiseModel(WeightSequence(8, 1.0, 1.0), ComponentDensity::gaussian()));
}
}  // namespace

TEST_CASE("naive estimator is exactly zero at alpha = 0") {
    auto tm = embedded_tanh(1.0);
    const auto curve = mc_scgf_naive(tm, SpectralField(1), {0.0}, 50, 64, 9);
    CHECK(curve.values[0] == 0.0);
    CHECK(curve.stderrs[0] == 0.0);
    CHECK(curve.ess[0] == doctest::Approx(1.0));
    CHECK_FALSE(curve.flagged[0]);
}

TEST_CASE("constant-map double: scgf estimate decays with k") {
    const RngStream rng(5, 0);
    SpectralField c = random_direction(4, 0.5, rng, 0);
    TransitionModel tm(make_constant_flow(c),
                       NoiseModel(WeightSequence(4, 1.0, 1.0), ComponentDensity::gaussian()));
    const auto short_run = mc_scgf_naive(tm, SpectralField(4), {0.5}, 50, 400, 11);
    const auto long_run = mc_scgf_naive(tm, SpectralField(4), {0.5}, 800, 400, 11);
    CHECK(std::abs(long_run.values[0]) < std::abs(short_run.values[0]));
    CHECK(std::abs(long_run.values[0]) <= 0.01);
}

TEST_CASE("cloning is exactly zero at alpha = 0") {
    auto tm = embedded_tanh(1.0);
    const auto res = mc_scgf_cloning(tm, SpectralField(1), 0.0, 100, 200, 21, 3);
    CHECK(res.scgf == 0.0);
    CHECK(res.stderr_ == 0.0);
}

TEST_CASE("estimators cross-validate against the oracle eigenvalue") {
    const double kappa = 1.0;
    auto tm = embedded_tanh(kappa);
    const GridKernel k = build_kernel(ScalarMap::tanh_map(kappa), ComponentDensity::gaussian(),
                                      10.0, 512, QuadRule::GaussLegendre);
    for (double alpha : {0.25, 0.5}) {
        const double oracle = tilted_eigenvalue(k, alpha).scgf;

        const auto naive = mc_scgf_naive(tm, SpectralField(1), {alpha}, 64, 4000, 101);
        REQUIRE_FALSE(naive.flagged[0]);
        CHECK(std::abs(naive.values[0] - oracle) <= 3.0 * naive.stderrs[0]);

        const auto clone = mc_scgf_cloning(tm, SpectralField(1), alpha, 1500, 1000, 103, 6);
        CHECK(std::abs(clone.scgf - oracle) <= 3.0 * clone.stderr_);

        const double combined =
            std::sqrt(naive.stderrs[0] * naive.stderrs[0] + clone.stderr_ * clone.stderr_);
        CHECK(std::abs(naive.values[0] - clone.scgf) <= 3.0 * combined);
    }
}

TEST_CASE("naive and cloning agree on a small driven flow") {
    auto tm = small_burgers();
    const double alpha = 0.25;
    const auto naive = mc_scgf_naive(tm, SpectralField(8), {alpha}, 48, 256, 31);
    const auto clone = mc_scgf_cloning(tm, SpectralField(8), alpha, 160, 300, 33, 4);
    const double combined =
        std::sqrt(naive.stderrs[0] * naive.stderrs[0] + clone.stderr_ * clone.stderr_);
    CHECK(std::abs(naive.values[0] - clone.scgf) <= 3.0 * combined);
}

TEST_CASE("naive flags exhausted ensembles instead of failing") {
    auto tm = embedded_tanh(2.0);
    // Strong tilt, long horizon, tiny ensemble: the weights collapse.
    const auto curve = mc_scgf_naive(tm, SpectralField(1), {1.6}, 400, 16, 41);
    CHECK(curve.flagged[0]);
    CHECK(std::isfinite(curve.values[0]));
}
