#include "doctest.h"

#include <cmath>

#include "padic/padic.hpp"
#include "padic/rng.hpp"

using namespace padic;

namespace {

PAdic random_padic(SplitMix64& g, std::uint32_t p, int N = 16, int vmin = -6, int vmax = 6) {
    if (g.uniform(12) == 0) return PAdic::zero(p, N);
    int v = vmin + static_cast<int>(g.uniform(static_cast<std::uint64_t>(vmax - vmin + 1)));
    std::vector<std::uint32_t> digits;
    digits.push_back(1 + static_cast<std::uint32_t>(g.uniform(p - 1)));
    int len = 1 + static_cast<int>(g.uniform(static_cast<std::uint64_t>(N - 1)));
    for (int i = 1; i < len; ++i) digits.push_back(static_cast<std::uint32_t>(g.uniform(p)));
    return PAdic::from_digits(p, v, digits, v + N);
}

} // namespace

TEST_SUITE_BEGIN("padic");

TEST_CASE("parse examples") {
    PAdic z = parse_padic("0", 3);
    CHECK(z.is_zero());
    CHECK(z.norm() == 0.0);

    PAdic one = parse_padic("1", 3);
    CHECK(one.valuation() == 0);
    CHECK(one.digits() == std::vector<std::uint32_t>{1});
    CHECK(one.norm() == 1.0);

    PAdic half = parse_padic(".1", 2); // 1/2
    CHECK(half.valuation() == -1);
    CHECK(half.norm() == 2.0);
}

TEST_CASE("parse rejects malformed literals") {
    CHECK_THROWS_WITH_AS(parse_padic("2", 2), doctest::Contains("malformed-literal"), Error);
    CHECK_THROWS_WITH_AS(parse_padic("", 3), doctest::Contains("malformed-literal"), Error);
    CHECK_THROWS_WITH_AS(parse_padic(".", 3), doctest::Contains("malformed-literal"), Error);
    CHECK_THROWS_WITH_AS(parse_padic("1.2.3", 5), doctest::Contains("malformed-literal"), Error);
}

TEST_CASE("norm examples") {
    CHECK(PAdic::from_integer(5, 5).norm() == doctest::Approx(0.2));
    CHECK(PAdic::zero(7).norm() == 0.0);
    PAdicVec v({PAdic::one(5), PAdic::from_integer(5, 5)});
    CHECK(v.norm() == 1.0);
    CHECK(v.norm_exponent() == 0);
}

TEST_CASE("arithmetic examples") {
    // carry: 1 + 1 = 2 = p for p=2
    PAdic two = PAdic::one(2).add(PAdic::one(2));
    CHECK(two.valuation() == 1);
    CHECK(two.norm() == 0.5);

    // p * p^-1 = 1
    PAdic x = PAdic::p_power(3, 1).mul(PAdic::p_power(3, -1));
    CHECK(x == PAdic::one(3));

    // invert_unit(2) in Q_3, multiply back to exactly 1 within the window
    PAdic u = PAdic::from_integer(3, 2);
    PAdic inv = u.invert_unit();
    CHECK(u.mul(inv) == PAdic::one(3));

    CHECK_THROWS_WITH_AS(PAdic::from_integer(3, 3).invert_unit(), doctest::Contains("not-a-unit"),
                         Error);
    CHECK_THROWS_WITH_AS(PAdic::one(3).add(PAdic::one(5)), doctest::Contains("prime-mismatch"),
                         Error);
}

TEST_CASE("character examples") {
    CHECK(PAdic::zero(5).character().is_one());
    // chi(1/2) = -1 for p=2
    UnitComplex c2 = parse_padic(".1", 2).character();
    CHECK(c2.phase_num() == 1);
    CHECK(c2.phase_den() == 2);
    // chi(1/3) = exp(2 pi i / 3)
    UnitComplex c3 = parse_padic(".1", 3).character();
    CHECK(c3.phase_num() == 1);
    CHECK(c3.phase_den() == 3);
    // integer p-adics map to 1
    CHECK(parse_padic("21", 3).character().is_one());
}

TEST_CASE("ultrametric inequality holds exactly") {
    SplitMix64 g(2024);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 300; ++i) {
            PAdic x = random_padic(g, p);
            PAdic y = random_padic(g, p);
            PAdic s = x.add(y);
            auto ex = x.norm_exponent(), ey = y.norm_exponent(), es = s.norm_exponent();
            int mx = std::max(ex.value_or(-1000), ey.value_or(-1000));
            if (es) CHECK(*es <= mx);
            if (ex.value_or(-1000) != ey.value_or(-1000)) {
                REQUIRE(es.has_value());
                CHECK(*es == mx); // equality when norms differ
            }
        }
    }
}

TEST_CASE("norm multiplicativity is exact in exponents") {
    SplitMix64 g(55);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 200; ++i) {
            PAdic x = random_padic(g, p);
            PAdic y = random_padic(g, p);
            PAdic m = x.mul(y);
            if (x.is_zero() || y.is_zero()) {
                CHECK(m.is_zero());
            } else {
                REQUIRE(m.norm_exponent().has_value());
                CHECK(*m.norm_exponent() == *x.norm_exponent() + *y.norm_exponent());
            }
        }
    }
}

TEST_CASE("character is additive with exact rational phases") {
    SplitMix64 g(77);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 200; ++i) {
            PAdic x = random_padic(g, p, 16, -8, 4);
            PAdic y = random_padic(g, p, 16, -8, 4);
            UnitComplex lhs = x.add(y).character();
            UnitComplex rhs = x.character() * y.character();
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("format round-trips values bit-exactly") {
    SplitMix64 g(101);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int i = 0; i < 200; ++i) {
            PAdic x = random_padic(g, p);
            PAdic back = parse_padic(x.format(), p, std::max(1, x.precision()));
            CHECK(back == x);
        }
    }
    CHECK(parse_padic("102", 3).format() == "102");
    CHECK(parse_padic(".01", 5).format() == ".01");
    CHECK(parse_padic("0", 7).format() == "0");
}

TEST_CASE("negation is an exact additive inverse within the window") {
    SplitMix64 g(7);
    for (int i = 0; i < 100; ++i) {
        PAdic x = random_padic(g, 3);
        CHECK(x.add(x.neg()).is_zero());
    }
}

TEST_CASE("window truncation keeps the common window") {
    PAdic a = parse_padic("1", 2, 4);    // known on [0, 4)
    PAdic b = parse_padic("1111", 2, 4); // 1+2+4+8
    PAdic s = a.add(b);
    // 1 + 15 = 16 = 2^4 which is beyond the window: the sum is zero there
    CHECK(s.is_zero());
    CHECK(s.known_to() == 4);
}

TEST_SUITE_END();
