#include <doctest.h>

#include "gclab/philox.hpp"

using namespace gclab;

TEST_CASE("philox4x32-10 known-answer vectors") {
    const auto z = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);

    const auto o = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     {0xffffffffu, 0xffffffffu});
    CHECK(o[0] == 0x408f276du);
    CHECK(o[1] == 0x41c83b0eu);
    CHECK(o[2] == 0xa20bc7c6u);
    CHECK(o[3] == 0x6d5451fdu);

    const auto p = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     {0xa4093822u, 0x299f31d0u});
    CHECK(p[0] == 0xd16cfe09u);
    CHECK(p[1] == 0x94fdccebu);
    CHECK(p[2] == 0x5001e420u);
    CHECK(p[3] == 0x24126ea1u);
}

TEST_CASE("stream draws are deterministic and order-independent") {
    const RngStream s(42, 7);
    const double a = s.uniform(5);
    const double b = s.uniform(3);
    CHECK(s.uniform(3) == b);
    CHECK(s.uniform(5) == a);
    const RngStream t(42, 8);
    CHECK(s.uniform(5) != t.uniform(5));
}

TEST_CASE("uniforms live in (0,1) and normals have the right moments") {
    const RngStream s(1, 0);
    const int n = 100000;
    double mean = 0.0, var = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto u = s.uniform2(i);
        CHECK(u[0] > 0.0);
        CHECK(u[0] < 1.0);
        const auto z = s.normal2(static_cast<std::uint64_t>(i) + (1ull << 40));
        mean += z[0] + z[1];
        var += z[0] * z[0] + z[1] * z[1];
    }
    mean /= 2.0 * n;
    var /= 2.0 * n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}
