#include "doctest.h"

#include "markoff/action.hpp"
#include "markoff/arith.hpp"

#include <map>
#include <random>

using namespace markoff::action;
using markoff::arith::PrimeField;
using markoff::surface::PointTable;
using markoff::surface::SurfacePoint;

TEST_CASE("generator formulas") {
    PrimeField F(7);
    SurfacePoint P{3, 3, 3};
    CHECK(apply(Gen::R3, P, F) == SurfacePoint{3, 3, 6});
    CHECK(apply(Gen::Rot1, SurfacePoint{4, 0, 0}, F) == SurfacePoint{4, 0, 0});
    CHECK(apply(Gen::GammaMinusI, P, F) == P);
    // Word application is right-to-left: Rot1 = R3 o Swap23.
    MoveWord w{{Gen::R3, Gen::Swap23}};
    SurfacePoint Q{1, 2, 3};
    CHECK(apply(w, Q, F) == apply(Gen::Rot1, Q, F));
}

TEST_CASE("every generator preserves every X_t") {
    std::mt19937 rng(7);
    const Gen all[] = {Gen::R1,   Gen::R2,     Gen::R3,       Gen::Swap12, Gen::Swap23,
                       Gen::Swap13, Gen::Rot1, Gen::Rot2,     Gen::Rot3,   Gen::Gamma0,
                       Gen::Gamma1728, Gen::GammaInf, Gen::GammaMinusI};
    const std::uint32_t primes[] = {5, 7, 11, 13, 17};
    int samples = 0;
    while (samples < 100000) {
        std::uint32_t p = primes[rng() % 5];
        PrimeField F(p);
        std::uint32_t x = rng() % p, y = rng() % p, z = rng() % p;
        std::uint32_t t = F.sub(F.sub(F.add(F.add(F.mul(x, x), F.mul(y, y)), F.mul(z, z)),
                                      F.mul(F.mul(x, y), z)),
                                2 % p);
        Gen g = all[rng() % 13];
        SurfacePoint Q = apply(g, {x, y, z}, F);
        std::uint32_t t2 = F.sub(F.sub(F.add(F.add(F.mul(Q.x, Q.x), F.mul(Q.y, Q.y)), F.mul(Q.z, Q.z)),
                                       F.mul(F.mul(Q.x, Q.y), Q.z)),
                                 2 % p);
        REQUIRE(t2 == t);
        ++samples;
    }
}

TEST_CASE("involutions and torsion") {
    PointTable tab = PointTable::enumerate(11, -2);
    const PrimeField& F = tab.field();
    for (std::size_t i = 0; i < tab.size(); ++i) {
        SurfacePoint P = tab.point_at(i);
        for (Gen g : {Gen::R1, Gen::R2, Gen::R3, Gen::Swap12, Gen::Swap23, Gen::Swap13})
            CHECK(apply(g, apply(g, P, F), F) == P);
        CHECK(apply(Gen::Gamma1728, apply(Gen::Gamma1728, P, F), F) == P);
        SurfacePoint Q = apply(Gen::Gamma0, apply(Gen::Gamma0, apply(Gen::Gamma0, P, F), F), F);
        CHECK(Q == P);
    }
}

TEST_CASE("orbit decomposition") {
    PointTable t5 = PointTable::enumerate(5, -2);
    auto star = orbit_decompose(t5, default_gens(), Restrict::Star);
    REQUIRE(star.orbits.size() == 1);
    CHECK(star.orbits[0].size == 40);
    CHECK(star.transitive());

    auto all = orbit_decompose(t5, default_gens(), Restrict::All);
    REQUIRE(all.orbits.size() == 2);
    CHECK(all.orbits[0].rep_key == 0);  // the singleton {(0,0,0)}
    CHECK(all.orbits[0].size == 1);
    CHECK(all.orbits[1].size == 40);

    PointTable t7 = PointTable::enumerate(7, -2);
    auto s7 = orbit_decompose(t7, default_gens(), Restrict::Star);
    REQUIRE(s7.orbits.size() == 1);
    CHECK(s7.orbits[0].size == 28);

    // Determinism: a second run gives identical ids and orbit lists.
    auto star2 = orbit_decompose(t5, default_gens(), Restrict::Star);
    CHECK(star.orbit_id == star2.orbit_id);
    CHECK(star.generator_set_id() == "R3+Swap12+Swap23/star");
}

TEST_CASE("rot orbits on conic fibers") {
    CHECK(rot_orbits_on_fiber(5, -2, 0) == std::vector<std::uint64_t>{4, 4});
    CHECK(rot_orbits_on_fiber(5, -2, 5 - 2) == std::vector<std::uint64_t>{10});
    PrimeField F7(7);
    for (std::uint64_t s : rot_orbits_on_fiber(7, -2, 3))
        CHECK(s == markoff::arith::n_of_trace(3, F7));
    // Freeness sweep: every fiber over every small surface.
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (std::int64_t t = 0; t < p; ++t) {
            if (t == 2) continue;
            for (std::uint32_t a = 0; a < p; ++a) CHECK_NOTHROW(rot_orbits_on_fiber(p, t, a));
        }
    }
    CHECK_THROWS_AS(rot_orbits_on_fiber(7, 2, 1), std::invalid_argument);
}

TEST_CASE("permutations and parity") {
    PointTable t5 = PointTable::enumerate(5, -2);
    auto idp = permutation_of(Gen::GammaMinusI, t5, Restrict::Star);
    for (std::size_t i = 0; i < idp.images.size(); ++i) CHECK(idp.images[i] == i);
    CHECK(idp.even);

    auto swap = permutation_of(Gen::Swap12, t5, Restrict::Star);
    // Involution; parity derivable from the transposition count.
    std::size_t moved = 0;
    for (std::size_t i = 0; i < swap.images.size(); ++i) {
        CHECK(swap.images[swap.images[i]] == i);
        if (swap.images[i] != i) ++moved;
    }
    CHECK(swap.even == ((moved / 2) % 2 == 0));

    // Rot1 cycle lengths agree with the per-fiber decomposition.
    auto rot = permutation_of(Gen::Rot1, t5, Restrict::Star);
    std::map<std::uint64_t, std::uint64_t> cycle_hist;
    std::vector<std::uint8_t> seen(rot.images.size(), 0);
    for (std::size_t i = 0; i < rot.images.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            ++len;
            j = rot.images[j];
        }
        ++cycle_hist[len];
    }
    std::map<std::uint64_t, std::uint64_t> fiber_hist;
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint64_t s : rot_orbits_on_fiber(5, -2, a)) ++fiber_hist[s];
    CHECK(cycle_hist == fiber_hist);
}
