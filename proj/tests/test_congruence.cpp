#include "doctest.h"

#include "markoff/congruence.hpp"

#include <stdexcept>

using namespace markoff::congruence;

TEST_CASE("required modulus case split") {
    auto a = required_modulus(5, -2);
    CHECK(a.modulus == 5);
    CHECK(!a.twice_orbit);
    CHECK(a.rule == Rule::Parabolic);

    // (7, 1, 3): r = ord_3(n_7(1)) = ord_3(6) = 1, s = ord_3(336) - 1 = 0.
    auto l = required_modulus(7, 1, 3);
    CHECK(l.modulus == 3);
    CHECK(!l.twice_orbit);
    CHECK(l.rule == Rule::GeneralLadic);

    // Hyperbolic absorption: p=5, t=0 has n = 4, modulus 4/gcd(4,2) = 2 on 2|O|.
    auto h = required_modulus(5, 0);
    CHECK(h.rule == Rule::Hyperbolic);
    CHECK(h.modulus == 2);
    CHECK(h.twice_orbit);

    auto e = required_modulus(7, 3);  // 3^2-4 = 5 is a nonsquare mod 7
    CHECK(e.rule == Rule::Elliptic);

    CHECK_THROWS_AS(required_modulus(7, 2), std::invalid_argument);
    CHECK_THROWS_AS(required_modulus(7, 1, 2), std::invalid_argument);
}

TEST_CASE("verify_surface spot values") {
    auto v5 = verify_surface(5, -2);
    REQUIRE(v5.size() == 1);
    CHECK(v5[0].orbit_size == 40);
    CHECK(v5[0].modulus == 5);
    CHECK(v5[0].passed);
    CHECK(v5[0].rule == Rule::MainDivisibility);
    CHECK(!v5[0].twice_orbit);

    auto v7 = verify_surface(7, -2);
    REQUIRE(v7.size() == 1);
    CHECK(v7[0].orbit_size == 28);
    CHECK(v7[0].passed);

    // t = -2 = 1 mod 3: the star set is empty.
    CHECK(verify_surface(3, -2).empty());
    CHECK_THROWS_AS(verify_surface(7, 2), std::invalid_argument);
}

TEST_CASE("exhaustive small sweep") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (std::int64_t t = 0; t < p; ++t) {
            if (t == 2) continue;
            for (const auto& v : verify_surface(p, t)) {
                CHECK(v.passed);
                // Case (a) has no factor-2 slack by the theorem.
                if (v.rule == Rule::MainDivisibility) CHECK(!v.twice_orbit);
            }
        }
    }
}

TEST_CASE("centralizer orders") {
    auto c1 = centralizer_order_check(5, -2);
    CHECK(c1.expected == 10);
    CHECK(c1.ok());

    auto c2 = centralizer_order_check(7, 3);  // legendre(5,7) = -1: order q+1
    CHECK(c2.expected == 8);
    CHECK(c2.ok());

    auto c3 = centralizer_order_check(5, 0);  // legendre(-4,5) = +1: order q-1
    CHECK(c3.expected == 4);
    CHECK(c3.ok());

    for (std::uint32_t p : {5u, 7u, 11u, 13u})
        for (std::int64_t t = 0; t < p; ++t) {
            if (t == 2) continue;
            CHECK(centralizer_order_check(p, t).ok());
        }
}
