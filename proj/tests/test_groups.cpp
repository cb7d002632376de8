#include "doctest.h"

#include "markoff/groups.hpp"

#include <map>
#include <sstream>

using namespace markoff::groups;

#ifndef MARKOFF_GROUP_DIR
#define MARKOFF_GROUP_DIR "data/groups"
#endif

namespace {
std::string grp(const std::string& name) { return std::string(MARKOFF_GROUP_DIR) + "/" + name; }
}  // namespace

TEST_CASE("closure basics") {
    FiniteGroup trivial = FiniteGroup::closure({});
    CHECK(trivial.size() == 1);

    // Two standard generators close up to all of SL2(F_5).
    FiniteGroup c = FiniteGroup::closure({Mat2{5, 1, 1, 0, 1}, Mat2{5, 1, 0, 1, 1}});
    CHECK(c.size() == 120);

    FiniteGroup d = dihedral(5);
    CHECK(d.size() == 10);

    CHECK_THROWS(FiniteGroup::closure({Mat2{5, 1, 1, 0, 1}, Mat2{5, 1, 0, 1, 1}}, 50));
    CHECK_THROWS(FiniteGroup::closure({Mat2{5, 0, 0, 0, 0}}));  // singular generator
}

TEST_CASE("sl2 direct construction") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        FiniteGroup G = sl2(p);
        CHECK(G.size() == std::size_t(p) * (p * p - 1));
        CHECK(G.center().size() == (p == 2 ? 1 : 2));
    }
    FiniteGroup G5 = sl2(5);
    // Centralizer of a noncentral trace -2 element has order 2p.
    std::uint32_t c = G5.index_of(Mat2{5, 4, 1, 0, 4});
    CHECK(G5.centralizer(c).size() == 10);
    // Order of the unipotent [[1,1],[0,1]] in SL2(F_7) is 7.
    FiniteGroup G7 = sl2(7);
    CHECK(G7.order(G7.index_of(Mat2{7, 1, 1, 0, 1})) == 7);
}

TEST_CASE("lagrange and class sizes") {
    for (const char* name : {"a5.grp", "sl2_5.grp", "dihedral_14.grp"}) {
        FiniteGroup G = load_group_spec(grp(name));
        std::map<std::uint32_t, std::uint64_t> class_sizes;
        for (std::uint32_t i = 0; i < G.size(); ++i) {
            CHECK(G.size() % G.order(i) == 0);
            ++class_sizes[G.class_of(i)];
        }
        for (auto [cls, sz] : class_sizes) {
            CHECK(G.size() % sz == 0);
            CHECK(G.class_members(cls).size() == sz);
        }
    }
}

TEST_CASE("three trace -2 classes in SL2") {
    for (std::uint32_t p : {5u, 7u}) {
        FiniteGroup G = sl2(p);
        std::map<std::uint32_t, std::uint64_t> classes;  // class id -> size
        for (std::uint32_t i = 0; i < G.size(); ++i) {
            const Mat2& m = std::get<Mat2>(G.label(i));
            if ((m.a + m.d) % p == p - 2) ++classes[G.class_of(i)];
        }
        REQUIRE(classes.size() == 3);
        std::vector<std::uint64_t> sizes;
        for (auto [cls, sz] : classes) sizes.push_back(sz);
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes[0] == 1);  // {-I}
        CHECK(sizes[1] == sizes[2]);
    }
}

TEST_CASE("generating pairs") {
    FiniteGroup G = sl2(5);
    CHECK(!G.is_generating_pair(G.id(), G.id()));
    CHECK(G.is_generating_pair(G.index_of(Mat2{5, 1, 1, 0, 1}), G.index_of(Mat2{5, 1, 0, 1, 1})));

    FiniteGroup E = load_group_spec(grp("z2cubed.grp"));
    CHECK(E.size() == 8);
    for (std::uint32_t g = 0; g < E.size(); ++g)
        for (std::uint32_t h = 0; h < E.size(); ++h) CHECK(!E.is_generating_pair(g, h));
}

TEST_CASE("group spec parsing") {
    std::istringstream ok("# dihedral of order 10\nperm: (1 2 3 4 5)\nperm: (2 5)(3 4)\n");
    CHECK(parse_group_spec(ok).size() == 10);

    std::istringstream mixed("perm: (1 2)\nmat 5 1 1 0 1\n");
    CHECK_THROWS_AS(parse_group_spec(mixed), std::invalid_argument);

    std::istringstream junk("group: foo\n");
    CHECK_THROWS_AS(parse_group_spec(junk), std::invalid_argument);
}

TEST_CASE("corpus spec files") {
    const std::pair<const char*, std::size_t> expected[] = {
        {"a5.grp", 60},        {"a6.grp", 360},     {"psl2_5.grp", 60},  {"psl2_7.grp", 168},
        {"psl2_8.grp", 504},   {"psl2_11.grp", 660}, {"psl2_13.grp", 1092}, {"sl2_5.grp", 120},
        {"sl2_7.grp", 336},    {"q8.grp", 8},       {"z2.grp", 2},       {"z6.grp", 6},
        {"z2xz2.grp", 4},      {"dihedral_10.grp", 10}, {"dihedral_50.grp", 50},
    };
    for (auto [name, order] : expected) CHECK(load_group_spec(grp(name)).size() == order);
}

TEST_CASE("simplicity detection") {
    CHECK(load_group_spec(grp("a5.grp")).is_simple());
    CHECK(load_group_spec(grp("psl2_7.grp")).is_simple());
    CHECK(!sl2(5).is_simple());
    CHECK(!dihedral(5).is_simple());
    // D_10: proper normal subgroups are 1 and Z/5; 5-valuation 1, 2-valuation 0.
    FiniteGroup D = dihedral(5);
    CHECK(D.max_proper_normal_valuation(5) == 1);
    CHECK(D.max_proper_normal_valuation(2) == 0);
}

TEST_CASE("index-map mode beyond the dense limit") {
    // Unipotent subgroup mod 4099: cyclic of order 4099 > 4096.
    FiniteGroup G = FiniteGroup::closure({Mat2{4099, 1, 1, 0, 1}}, 5000);
    CHECK(G.size() == 4099);
    std::uint32_t g = G.index_of(Mat2{4099, 1, 1, 0, 1});
    CHECK(G.order(g) == 4099);
    CHECK(G.mul(g, G.inv(g)) == G.id());
    CHECK(G.center().size() == 4099);  // abelian
    CHECK(G.num_classes() == 4099);
}
