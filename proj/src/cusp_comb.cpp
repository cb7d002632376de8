#include "markoff/cusp_comb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "markoff/action.hpp"
#include "markoff/surface.hpp"

namespace markoff::cusp_comb {

using groups::FiniteGroup;
using nielsen::PairSpace;

std::vector<DeltaClass> delta_classes(const FiniteGroup& G) {
    PairSpace pairs(G);
    std::vector<DeltaClass> out;
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t seed : pairs.generating_classes()) {
        if (seen.count(seed)) continue;
        // gamma_inf-orbit of the Inn-class; its length is k_{u,h}.
        std::uint64_t len = 0;
        std::uint32_t best = seed;
        std::uint32_t c = seed;
        do {
            seen.insert(c);
            best = std::min(best, c);
            ++len;
            c = pairs.gamma_inf(c);
        } while (c != seed);
        auto [u, h] = pairs.rep(best);
        out.push_back({u, h, pairs.higman(best), len});
    }
    std::sort(out.begin(), out.end(), [](const DeltaClass& a, const DeltaClass& b) {
        return std::tie(a.higman_class, a.u, a.h) < std::tie(b.higman_class, b.u, b.h);
    });
    return out;
}

std::uint64_t k_uh(const FiniteGroup& G, std::uint32_t u, std::uint32_t h) {
    if (!G.is_generating_pair(u, h)) throw std::invalid_argument("k_uh: (u,h) must generate");
    // (u, u^k h) ~ (u, h) iff u^k h lies in the C_G(u)-conjugation orbit of h.
    std::vector<std::uint32_t> cen = G.centralizer(u);
    std::unordered_set<std::uint32_t> orbit{h};
    std::vector<std::uint32_t> stack{h};
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        for (std::uint32_t s : cen) {
            std::uint32_t y = G.conj(s, x);
            if (orbit.insert(y).second) stack.push_back(y);
        }
    }
    std::uint32_t x = h;
    for (std::uint64_t k = 1;; ++k) {
        x = G.mul(u, x);
        if (orbit.count(x)) return k;
        if (k > G.order(u)) throw std::logic_error("k_uh: exceeded |u|");
    }
}

std::vector<std::uint32_t> A_group(const FiniteGroup& G, std::uint32_t u, std::uint32_t h) {
    // a must centralize M_{u,h} = <u, h^-1 u^-1 h>, equivalently its two
    // generators, and satisfy a h a^-1 h^-1 in <u>.
    std::uint32_t uh = G.mul(G.mul(G.inv(h), G.inv(u)), h);
    std::vector<std::uint32_t> cen = G.centralizer_of_set({u, uh});
    std::vector<std::uint32_t> cyc = G.cyclic(u);
    std::vector<std::uint32_t> out;
    for (std::uint32_t a : cen) {
        std::uint32_t comm = G.mul(G.conj(a, h), G.inv(h));
        if (std::binary_search(cyc.begin(), cyc.end(), comm)) out.push_back(a);
    }
    return out;
}

CuspRecord cusp_record(const FiniteGroup& G, std::uint32_t u, std::uint32_t h) {
    CuspRecord rec;
    rec.u = u;
    rec.h = h;
    std::uint32_t hc = G.commutator(u, h);
    rec.higman_class = G.class_of(hc);
    rec.k = k_uh(G, u, h);
    rec.width = rec.k;
    std::uint32_t uhu = G.mul(G.mul(G.inv(h), G.inv(u)), h);
    rec.M_order = G.subgroup(u, uhu).size();
    std::vector<std::uint32_t> A = A_group(G, u, h);
    rec.A_order = A.size();
    // <[u^-1, h^-1]> cap A.
    std::uint32_t cinv = G.commutator(G.inv(u), G.inv(h));
    std::vector<std::uint32_t> cyc = G.cyclic(cinv);
    std::uint64_t inter = 0;
    for (std::uint32_t a : A)
        if (std::binary_search(cyc.begin(), cyc.end(), a)) ++inter;
    rec.vertical_order = inter;
    return rec;
}

std::uint64_t cusp_automorphism_order(const CuspRecord& rec) { return rec.vertical_order; }

std::uint64_t cusp_automorphism_order(const FiniteGroup& G, std::uint32_t u, std::uint32_t h) {
    return cusp_record(G, u, h).vertical_order;
}

std::map<std::uint32_t, std::uint64_t> m_prime_all(const FiniteGroup& G, const PairSpace& pairs) {
    std::map<std::uint32_t, std::uint64_t> out;
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t seed : pairs.generating_classes()) {
        if (seen.count(seed)) continue;
        std::uint32_t c = seed;
        do {
            seen.insert(c);
            c = pairs.gamma_inf(c);
        } while (c != seed);
        auto [u, h] = pairs.rep(seed);
        auto& m = out[pairs.higman(seed)];
        if (m == 0) m = 1;
        m = std::lcm(m, cusp_automorphism_order(G, u, h));
    }
    return out;
}

std::uint64_t m_prime(const FiniteGroup& G, std::uint32_t higman_class) {
    PairSpace pairs(G);
    auto all = m_prime_all(G, pairs);
    auto it = all.find(higman_class);
    if (it == all.end()) throw std::invalid_argument("m_prime: class not admissible");
    return it->second;
}

std::uint64_t d_prime(const FiniteGroup& G, std::uint32_t higman_class) {
    std::uint32_t c = G.class_rep(higman_class);
    return G.centralizer(c).size() / G.order(c);
}

CuspCrosscheck cusp_crosscheck(std::uint32_t p) {
    if (p < 5 || p > 13 || !arith::is_prime(p))
        throw std::invalid_argument("cusp_crosscheck: desk scale is p in {5,7,11,13}");
    CuspCrosscheck res;
    res.p = p;

    // Group side: gamma_inf-orbits on GL2-classes of generating pairs with
    // trace invariant -2.
    FiniteGroup G = groups::sl2(p);
    PairSpace pairs(G);
    std::vector<std::uint32_t> twist = groups::nonsquare_det_twist(G);
    arith::PrimeField F(p);
    std::uint32_t tneg2 = F.reduce(-2);

    auto gl2_canon = [&](std::uint32_t cls) {
        auto [g, h] = pairs.rep(cls);
        return std::min(cls, pairs.class_of(twist[g], twist[h]));
    };
    auto trace_of_class = [&](std::uint32_t conj_cls) {
        const groups::Mat2& m = std::get<groups::Mat2>(G.label(G.class_rep(conj_cls)));
        return F.add(m.a, m.d);
    };

    std::unordered_set<std::uint32_t> seen;  // over GL2-canonical class ids
    std::uint64_t orbits = 0;
    for (std::uint32_t seed : pairs.generating_classes()) {
        if (trace_of_class(pairs.higman(seed)) != tneg2) continue;
        std::uint32_t canon_seed = gl2_canon(seed);
        if (seen.count(canon_seed)) continue;
        ++orbits;
        std::uint32_t c = seed;
        do {
            seen.insert(gl2_canon(c));
            c = pairs.gamma_inf(c);
        } while (gl2_canon(c) != canon_seed);
    }
    res.group_side = orbits;

    // Surface side: Rot1-orbits on the star points of X_{-2}(p).
    surface::PointTable table = surface::PointTable::enumerate(p, -2);
    action::Gen rot[] = {action::Gen::Rot1};
    auto dec = action::orbit_decompose(table, rot, action::Restrict::Star);
    res.surface_side = dec.orbits.size();
    return res;
}

}  // namespace markoff::cusp_comb
