#include "doctest.h"

#include <set>

#include "padic/rng.hpp"

using namespace padic;

TEST_SUITE_BEGIN("rng");

TEST_CASE("splitmix64 matches the published reference stream") {
    SplitMix64 g0(0);
    CHECK(g0.next() == 0xe220a8397b1dcdafull);
    CHECK(g0.next() == 0x6e789e6aa1b965f4ull);
    CHECK(g0.next() == 0x06c45d188009454full);

    SplitMix64 g1(1234567);
    CHECK(g1.next() == 6457827717110365317ull);
    CHECK(g1.next() == 3203168211198807973ull);
    CHECK(g1.next() == 9817491932198370423ull);
}

TEST_CASE("fnv1a64 matches the published reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("p=2;d=1;L=0;c=") == 0x07675b6f1e7917d4ull);
}

TEST_CASE("ball stream derivation is frozen") {
    SplitMix64 g = ball_stream(1, "p=2;d=1;L=0;c=");
    CHECK(g.next() == 0xd785b62ee7a836d9ull);
    CHECK(g.next() == 0xcae2e8d7cbc9f564ull);
}

TEST_CASE("uniform rejection and Fisher-Yates are frozen") {
    SplitMix64 g = ball_stream(42, "p=5;d=1;L=0;c=");
    auto perm = g.permutation(5);
    CHECK(perm == std::vector<std::uint32_t>{3, 2, 1, 4, 0});
}

TEST_CASE("permutation draws are bijections") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SplitMix64 g(seed);
        auto perm = g.permutation(7);
        std::set<std::uint32_t> seen(perm.begin(), perm.end());
        CHECK(seen.size() == 7);
        CHECK(*seen.rbegin() == 6);
    }
}

TEST_CASE("uniform draws land in range") {
    SplitMix64 g(99);
    for (int i = 0; i < 1000; ++i) CHECK(g.uniform(13) < 13);
}

TEST_SUITE_END();
