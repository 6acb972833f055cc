#include <doctest.h>

#include <cmath>

#include "gclab/spectral.hpp"
#include "gclab/trig.hpp"

using namespace gclab;

TEST_CASE("sobolev norm on the stated fixtures") {
    SpectralField zero(8);
    CHECK(sobolev_norm(zero, 1.5) == 0.0);

    SpectralField u(8);
    u.set_cos(1, 1.0);
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(1.0));
    CHECK(sobolev_norm(u, 3.7) == doctest::Approx(1.0));

    SpectralField v(8);
    v.set_sin(2, 1.0);
    CHECK(sobolev_norm(v, 2.0) == doctest::Approx(4.0));
}

TEST_CASE("weighted inner product fixtures") {
    SpectralField z(1);
    WeightSequence b1(1, std::vector<double>{2.0, 2.0});
    CHECK(weighted_inner(z, z, b1, 2) == 0.0);

    SpectralField u(1);
    u.set_cos(1, 1.0);
    CHECK(weighted_inner(u, u, b1, 2) == doctest::Approx(0.25));

    WeightSequence b2(2, std::vector<double>{1.0, 1.0, 0.5, 0.5});
    SpectralField w(2, {1.0, 0.0, 0.0, 0.0});
    CHECK(weighted_inner(w, w, b2, 4) == doctest::Approx(1.0));

    SpectralField other(3);
    CHECK_THROWS_AS(weighted_inner(u, other, b1, 2), DimensionError);
}

TEST_CASE("parseval identity holds to rounding") {
    const RngStream rng(11, 0);
    SpectralField u = random_direction(32, 3.7, rng);
    double sum = 0.0;
    for (double c : u.coeffs()) sum += c * c;
    CHECK(sobolev_norm(u, 0.0) * sobolev_norm(u, 0.0) ==
          doctest::Approx(sum).epsilon(1e-12));
    CHECK(l2_norm(u) == doctest::Approx(std::sqrt(sum)).epsilon(1e-13));
}

TEST_CASE("weighted cauchy-schwarz on random pairs") {
    const RngStream rng(5, 1);
    WeightSequence b(16, 1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        SpectralField u = random_direction(16, 1.0 + t * 0.3, rng, 100 * t);
        SpectralField v = random_direction(16, 2.0, rng, 100 * t + 50);
        const double lhs = std::abs(weighted_inner(u, v, b, 2));
        const double rhs = weighted_norm(u, b, 2) * weighted_norm(v, b, 2);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("weighted norm comparison against the sobolev norm") {
    // If b_j >= c j^{-(s+1)} entrywise then ||w||_{b^2} <= (1/c^2) ||w||_{2(s+1)}.
    const double s = 0.5, c = 0.8;
    const int N = 24;
    std::vector<double> bv(2 * N);
    for (int i = 0; i < 2 * N; ++i) {
        const int j = SpectralField::mode_of(i);
        bv[i] = c * std::pow(j, -(s + 1.0)) * (1.0 + 0.5 * ((i * 37) % 5) / 5.0);
    }
    WeightSequence b(N, bv);
    const RngStream rng(9, 2);
    for (int t = 0; t < 10; ++t) {
        SpectralField w = random_direction(N, 1.0 + t, rng, 64 * t);
        CHECK(weighted_norm(w, b, 4) <= (1.0 / (c * c)) * sobolev_norm(w, 2.0 * (s + 1.0)) *
                                            (1.0 + 1e-12));
    }
}

TEST_CASE("grid evaluation fixtures and round trip") {
    SpectralField zero(3);
    const auto g0 = evaluate_on_grid(zero, 8);
    for (double v : g0) CHECK(v == 0.0);

    SpectralField u(3);
    u.set_cos(1, 1.0);
    const auto g = evaluate_on_grid(u, 16);
    for (int m = 0; m < 16; ++m) {
        const double x = 2.0 * M_PI * m / 16;
        CHECK(g[m] == doctest::Approx(std::cos(x) / std::sqrt(M_PI)).epsilon(1e-13));
    }

    const RngStream rng(3, 3);
    SpectralField w = random_direction(20, 2.5, rng);
    TrigWorkspace ws(20, 64);
    SpectralField back = ws.analyze(ws.synthesize(w));
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(back[i] == doctest::Approx(w[i]).epsilon(1e-12));

    CHECK_THROWS_AS(TrigWorkspace(20, 40), DimensionError);  // below 2N+2
}

TEST_CASE("derivative rotates coefficient pairs") {
    SpectralField u(4);
    u.set_cos(3, 2.0);
    const SpectralField d = derivative(u);
    CHECK(d.sin_coeff(3) == doctest::Approx(-6.0));
    CHECK(d.cos_coeff(3) == 0.0);
    // d/dx cos(3x) = -3 sin(3x): check on the grid too.
    TrigWorkspace ws(4, 16);
    const auto g = ws.synthesize(d);
    for (int m = 0; m < 16; ++m) {
        const double x = 2.0 * M_PI * m / 16;
        CHECK(g[m] == doctest::Approx(-6.0 * std::sin(3 * x) / std::sqrt(M_PI)).epsilon(1e-12));
    }
}
