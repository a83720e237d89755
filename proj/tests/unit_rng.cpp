#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxineq/batch.hpp"
#include "maxineq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace maxineq;

// Known answers generated with numpy 2.2 (np.random.Philox(key, counter)
// .random_raw(); numpy advances the counter before emitting a block, so its
// first block corresponds to counter[0] + 1).
TEST_CASE("philox4x64-10 known answers") {
    auto b = philox4x64({1, 0, 0, 0}, {0, 0});
    CHECK(b.w[0] == 0x02f4ba6408e4d89bull);
    CHECK(b.w[1] == 0x3dd62b0b9ca8c5b2ull);
    CHECK(b.w[2] == 0x1c8667a55d902e79ull);
    CHECK(b.w[3] == 0x907d7a052fd5b4dcull);

    b = philox4x64({2, 0, 0, 0}, {0, 0});
    CHECK(b.w[0] == 0x809bf322883987c3ull);
    CHECK(b.w[1] == 0x471128b9e807f7ddull);
    CHECK(b.w[2] == 0xf250ba0dbec065b7ull);
    CHECK(b.w[3] == 0xfc6ed66767a457bcull);

    b = philox4x64({2, 2, 3, 4}, {0xdeadbeefcafef00dull, 0x0123456789abcdefull});
    CHECK(b.w[0] == 0xeaedaa6fcaad15e6ull);
    CHECK(b.w[1] == 0xe7458e6c29c0367bull);
    CHECK(b.w[2] == 0xc56e6ed701f82986ull);
    CHECK(b.w[3] == 0xee17ef0441aeee39ull);

    b = philox4x64({1, 0, 0, 0}, {42, 0});
    CHECK(b.w[0] == 0xd1f8817d4d62880eull);
    CHECK(b.w[1] == 0x307266b65cc8797eull);
    CHECK(b.w[2] == 0xde1f04e7f084ed03ull);
    CHECK(b.w[3] == 0x65034a8e78cd1e59ull);
}

TEST_CASE("philox blocks are pure functions of key and counter") {
    const CounterRng rng{123, 7};
    const PhiloxBlock a = rng.block(5, 9);
    const PhiloxBlock b = rng.block(5, 9);
    CHECK(a.w == b.w);
    CHECK(rng.block(5, 10).w != a.w);
    CHECK(rng.block(6, 9).w != a.w);
    CHECK((CounterRng{123, 8}.block(5, 9).w != a.w));
}

TEST_CASE("uniform_open stays inside the open interval") {
    CHECK(uniform_open(0) > 0.0);
    CHECK(uniform_open(~0ull) < 1.0);
    const CounterRng rng{3, 0};
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const double u = uniform_open(rng.block(i, 0).w[0]);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian moments and distribution") {
    const CounterRng rng{91, 0};
    const std::size_t n = 200000;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal(i, 0);

    const double mean = batch::mean(z);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : z) {
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m2 /= n; m3 /= n; m4 /= n;
    // 4-sigma bands for n = 2e5
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / double(n)));
    CHECK(std::abs(m3) < 4.0 * std::sqrt(15.0 / double(n)));
    CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / double(n)));

    // KS against the standard normal cdf
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        ks = std::max(ks, std::abs(F - double(i + 1) / double(n)));
        ks = std::max(ks, std::abs(F - double(i) / double(n)));
    }
    CHECK(ks < 1.95 / std::sqrt(double(n))); // ~ p = 0.001 threshold
}
