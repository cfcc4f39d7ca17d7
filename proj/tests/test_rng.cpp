#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "intraday/rng.hpp"

using namespace intraday;

// Known-answer vectors published with the Random123 distribution (kat_vectors).
TEST_CASE("philox4x32-10 known answers") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are pure functions of seed, path and stream id") {
    Stream a(7, 3, 1), b(7, 3, 1), c(7, 4, 1), d(7, 3, 2), e(8, 3, 1);
    for (int i = 0; i < 100; ++i) {
        const double va = a.normal();
        CHECK(va == b.normal());
        const double vc = c.normal(), vd = d.normal(), ve = e.normal();
        CHECK(va != vc);
        CHECK(va != vd);
        CHECK(va != ve);
    }
}

TEST_CASE("uniform draws stay inside the open unit interval") {
    Stream s(1, 0, 0);
    double lo = 1, hi = 0;
    for (int i = 0; i < 200000; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 1e-4);
    CHECK(hi > 1 - 1e-4);
}

TEST_CASE("normal and exponential moments") {
    const int n = 400000;
    Stream s(20240601, 11, 0);
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        m1 += z;
        m2 += z * z;
        m4 += z * z * z * z;
    }
    m1 /= n, m2 /= n, m4 /= n;
    CHECK(std::abs(m1) < 5 / std::sqrt(double(n)));
    CHECK(std::abs(m2 - 1) < 5 * std::sqrt(2.0 / n));
    CHECK(std::abs(m4 - 3) < 5 * std::sqrt(96.0 / n));

    Stream t(20240601, 11, 3);
    const double rate = 2.5;
    double e1 = 0;
    for (int i = 0; i < n; ++i) e1 += t.exponential(rate);
    e1 /= n;
    CHECK(std::abs(e1 - 1 / rate) < 5 / (rate * std::sqrt(double(n))));
}
