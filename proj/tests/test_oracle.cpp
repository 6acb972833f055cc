#include <doctest.h>

#include <cmath>

#include "gclab/oracle.hpp"
#include "test_fixtures.hpp"

using namespace gclab;

namespace {
GridKernel tanh_kernel(int n = 512, double L = 10.0) {
    return build_kernel(ScalarMap::tanh_map(2.0), ComponentDensity::gaussian(), L, n,
                        QuadRule::GaussLegendre);
}
GridKernel ar1_kernel(int n = 1024, double L = 14.0) {
    return build_kernel(ScalarMap::linear(0.5), ComponentDensity::gaussian(), L, n,
                        QuadRule::GaussLegendre);
}
}  // namespace

TEST_CASE("constant map: every kernel row is identical") {
    const auto k = build_kernel(ScalarMap::constant(0.0), ComponentDensity::gaussian(), 10.0, 64,
                                QuadRule::GaussLegendre);
    for (int j = 0; j < k.size(); ++j)
        CHECK(k.log_density()(0, j) == k.log_density()(17, j));
}

TEST_CASE("row sums are stochastic to high accuracy at n=512") {
    const auto k = tanh_kernel();
    CHECK(k.tau_q() <= 1e-8);
    CHECK(k.boundary_leakage() < 1e-10);
}

TEST_CASE("trapezoid row-sum defect drops at second order under refinement") {
    // A beta < 2 density has a kink at the shift, so the trapezoid rule shows
    // its nominal order instead of flooring at rounding.
    const ComponentDensity d = ComponentDensity::gen_exp(1.0, 1.5);
    const auto defect = [&](int n) {
        return build_kernel(ScalarMap::tanh_map(2.0), d, 12.0, n, QuadRule::Trapezoid).tau_q();
    };
    const double d1 = defect(128);
    const double d2 = defect(256);
    CHECK(d1 / d2 >= 4.0 * 0.8);  // 20% slack on the asymptotic ratio
}

TEST_CASE("domain too small raises with the measured leakage") {
    CHECK_THROWS_AS(build_kernel(ScalarMap::linear(0.5), ComponentDensity::gaussian(), 6.0, 128,
                                 QuadRule::GaussLegendre),
                    DomainTooSmallError);
}

TEST_CASE("stationary density: constant map absorbs in one step") {
    const double c = 0.4;
    const auto k = build_kernel(ScalarMap::constant(c), ComponentDensity::gaussian(), 10.0, 256,
                                QuadRule::GaussLegendre);
    const auto st = stationary_density(k, 1e-13);
    // rho(v) = theta(v - c) / theta(v).
    for (int j = 0; j < k.size(); j += 31) {
        const double v = k.nodes()[j];
        const double expect = std::exp(-0.5 * (v - c) * (v - c) + 0.5 * v * v);
        CHECK(st.f(j) == doctest::Approx(expect).epsilon(1e-9));
    }
    const double mass = (k.lweights().array() * st.f.array()).sum();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stationary density: AR(1) matches the closed-form gaussian") {
    const auto k = ar1_kernel();
    const auto st = stationary_density(k, 1e-13);
    const double var = 1.0 / (1.0 - 0.25);  // b=1, q=0.5
    for (int j = 0; j < k.size(); j += 97) {
        const double v = k.nodes()[j];
        const double target = std::exp(-0.5 * v * v / var) / std::sqrt(2.0 * M_PI * var);
        const double expect = target / std::exp(k.log_theta()(j));
        CHECK(st.f(j) == doctest::Approx(expect).epsilon(1e-6));
    }
    CHECK(st.f.minCoeff() > 0.0);  // Perron positivity
}

TEST_CASE("reversible fixtures produce zero entropy production") {
    const auto ar1 = ar1_kernel();
    const auto st1 = stationary_density(ar1, 1e-13);
    CHECK(std::abs(ep_rate(ar1, st1)) <= 1e-8);
    CHECK(detailed_balance_residual(ar1, st1) <= 1e-8);

    const auto cm = build_kernel(ScalarMap::constant(0.7), ComponentDensity::gaussian(), 10.0, 256,
                                 QuadRule::GaussLegendre);
    const auto st2 = stationary_density(cm, 1e-13);
    CHECK(std::abs(ep_rate(cm, st2)) <= 1e-8);
    CHECK(detailed_balance_residual(cm, st2) <= 1e-8);
}

TEST_CASE("tanh map: entropy production strictly positive, pinned regression") {
    const auto k = tanh_kernel();
    const auto st = stationary_density(k, 1e-13);
    const double ep = ep_rate(k, st);
    CHECK(ep > 10.0 * k.tau_q());
    const auto st_ar1 = stationary_density(ar1_kernel(), 1e-13);
    CHECK(detailed_balance_residual(k, st) >
          1e3 * detailed_balance_residual(ar1_kernel(), st_ar1));

    REQUIRE(test_fixtures::has("tanh_oracle"));
    const double pinned = test_fixtures::pinned()["tanh_oracle"]["ep"].get<double>();
    CHECK(ep == doctest::Approx(pinned).epsilon(1e-9));
}

TEST_CASE("entropy balance closes for stationary and random densities") {
    const auto k = tanh_kernel(256, 10.0);
    const auto rho = stationary_density(k, 1e-13);
    const double tol = std::max(10.0 * k.tau_q(), 1e-12);

    SUBCASE("stationary input: delta_S = 0, ep = flux") {
        const auto bal = ep_functional(k, rho, rho);
        CHECK(std::abs(bal.delta_S) <= tol);
        CHECK(bal.ep == doctest::Approx(bal.flux).epsilon(1e-9));
        CHECK(bal.ep == doctest::Approx(ep_rate(k, rho)).epsilon(1e-8));
        CHECK(std::abs(bal.boundary) <= tol);
    }

    SUBCASE("random densities: delta_S = ep - flux, ep >= 0") {
        const RngStream rng(9001, 0);
        for (int t = 0; t < 20; ++t) {
            ScalarState f;
            f.f.resize(k.size());
            for (int i = 0; i < k.size(); ++i)
                f.f(i) = 0.05 + rng.uniform((static_cast<std::uint64_t>(t) << 32) | i);
            const double mass = (k.lweights().array() * f.f.array()).sum();
            f.f /= mass;
            const auto bal = ep_functional(k, f, rho);
            CHECK(std::abs(bal.delta_S - (bal.ep - bal.flux)) <= tol);
            CHECK(bal.ep >= -tol);
        }
    }

    SUBCASE("point-like bump has strictly positive production") {
        ScalarState f;
        f.f.resize(k.size());
        for (int i = 0; i < k.size(); ++i) {
            const double v = k.nodes()[i];
            f.f(i) = std::exp(-8.0 * (v - 1.0) * (v - 1.0)) / std::exp(k.log_theta()(i));
        }
        const double mass = (k.lweights().array() * f.f.array()).sum();
        f.f /= mass;
        const auto bal = ep_functional(k, f, rho);
        CHECK(bal.ep > 100.0 * k.tau_q());
    }
}

TEST_CASE("tilted operator: alpha = 0 is the untitled stochastic kernel") {
    const auto k = tanh_kernel(256, 10.0);
    const auto te = tilted_eigenvalue(k, 0.0);
    CHECK(std::abs(te.scgf) <= std::max(10.0 * k.tau_q(), 1e-12));
    CHECK(te.lambda == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("AR(1) tilted spectrum is flat across the window") {
    const auto k = ar1_kernel();
    for (double a : {-0.4, -0.1, 0.3, 0.8, 1.2, 1.45}) {
        const auto te = tilted_eigenvalue(k, a);
        CHECK(std::abs(te.scgf) <= 1e-7);
    }
}

TEST_CASE("tanh scgf is convex with zeros at 0 and 1") {
    const auto k = tanh_kernel();
    std::vector<double> alphas;
    for (int i = 0; i <= 12; ++i) alphas.push_back(-1.0 + 0.25 * i);
    const auto curve = oracle_scgf_curve(k, alphas);
    // zeros at the ends of the symmetry interval
    double at0 = 1e9, at1 = 1e9;
    for (const auto& p : curve) {
        if (std::abs(p.alpha) < 1e-12) at0 = p.value;
        if (std::abs(p.alpha - 1.0) < 1e-12) at1 = p.value;
    }
    CHECK(std::abs(at0) <= 1e-10);
    CHECK(std::abs(at1) <= 1e-7);
    // convexity of the sampled curve
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double second = curve[i + 1].value - 2.0 * curve[i].value + curve[i - 1].value;
        CHECK(second >= -1e-9);
    }
    // symmetry e(alpha) = e(1 - alpha): compare 0.25 step pairs on the grid
    for (const auto& p : curve) {
        const double mirror = 1.0 - p.alpha;
        for (const auto& q : curve)
            if (std::abs(q.alpha - mirror) < 1e-12)
                CHECK(std::abs(p.value - q.value) <= 1e-7);
    }
    // interior minimum (strict convexity): midpoint value below the zeros
    for (const auto& p : curve)
        if (std::abs(p.alpha - 0.5) < 1e-12) CHECK(p.value < -1e-4);
}

TEST_CASE("feynman-kac duality holds to rounding on the grid") {
    const auto k = tanh_kernel();
    for (double a : {-0.5, 0.3, 0.5, 0.9}) {
        const double defect = duality_residual(k, a, 10, 77);
        CHECK(defect <= 1e-10);
        if (a == 0.5) CHECK(defect <= 1e-12);
    }
}

TEST_CASE("kolmogorov-sinai entropies and the production identity") {
    const auto ar1 = ar1_kernel();
    const auto st1 = stationary_density(ar1, 1e-13);
    const auto ks1 = ks_entropies(ar1, st1);
    CHECK(std::abs(ks1.h_minus - ks1.h_plus) <= 1e-8);

    const auto cm = build_kernel(ScalarMap::constant(0.3), ComponentDensity::gaussian(), 10.0, 256,
                                 QuadRule::GaussLegendre);
    const auto st2 = stationary_density(cm, 1e-13);
    const auto ks2 = ks_entropies(cm, st2);
    CHECK(std::abs(ks2.h_minus - ks2.h_plus) <= 1e-8);

    const auto tk = tanh_kernel();
    const auto st3 = stationary_density(tk, 1e-13);
    const auto ks3 = ks_entropies(tk, st3);
    CHECK(ks3.h_minus - ks3.h_plus == doctest::Approx(ks3.sigma_mean).epsilon(1e-8));
    CHECK(ks3.h_minus > ks3.h_plus);
}
