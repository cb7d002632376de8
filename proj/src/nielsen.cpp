#include "markoff/nielsen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "markoff/action.hpp"
#include "markoff/arith.hpp"
#include "markoff/cusp_comb.hpp"
#include "markoff/surface.hpp"

namespace markoff::nielsen {

using groups::FiniteGroup;
using groups::Mat2;

PairSpace::PairSpace(const FiniteGroup& G) : G_(&G) {
    const std::uint32_t n = static_cast<std::uint32_t>(G.size());
    const std::uint32_t ncls = G.num_classes();
    offset_.resize(ncls);
    horb_.resize(ncls);
    std::uint32_t total = 0;
    for (std::uint32_t c = 0; c < ncls; ++c) {
        offset_[c] = total;
        std::uint32_t r = G.class_rep(c);
        std::vector<std::uint32_t> cen = G.centralizer(r);
        auto& orb = horb_[c];
        orb.assign(n, UINT32_MAX);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t h = 0; h < n; ++h) {
            if (orb[h] != UINT32_MAX) continue;
            std::uint32_t oid = total - offset_[c];
            orb[h] = oid;
            rep_g_.push_back(r);
            rep_h_.push_back(h);  // seed is the least element of its orbit
            ++total;
            stack.push_back(h);
            while (!stack.empty()) {
                std::uint32_t x = stack.back();
                stack.pop_back();
                for (std::uint32_t s : cen) {
                    std::uint32_t y = G.conj(s, x);
                    if (orb[y] == UINT32_MAX) {
                        orb[y] = oid;
                        stack.push_back(y);
                    }
                }
            }
        }
    }
    generating_.resize(total);
    higman_.resize(total);
    for (std::uint32_t cls = 0; cls < total; ++cls) {
        std::uint32_t g = rep_g_[cls], h = rep_h_[cls];
        generating_[cls] = G.is_generating_pair(g, h);
        higman_[cls] = G.class_of(G.commutator(g, h));
        if (generating_[cls]) gen_classes_.push_back(cls);
    }
}

std::uint32_t PairSpace::class_of(std::uint32_t g, std::uint32_t h) const {
    std::uint32_t c = G_->class_of(g);
    std::uint32_t s = G_->conj_to_rep(g);
    std::uint32_t h2 = G_->conj(s, h);
    return offset_[c] + horb_[c][h2];
}

std::uint32_t PairSpace::gamma0(std::uint32_t cls) const {
    auto [g, h] = rep(cls);
    return class_of(G_->mul(g, G_->inv(h)), g);
}

std::uint32_t PairSpace::gamma1728(std::uint32_t cls) const {
    auto [g, h] = rep(cls);
    return class_of(G_->inv(h), g);
}

std::uint32_t PairSpace::gamma_inf(std::uint32_t cls) const {
    auto [g, h] = rep(cls);
    return class_of(g, G_->mul(g, h));
}

std::uint32_t PairSpace::gamma_minus_i(std::uint32_t cls) const {
    auto [g, h] = rep(cls);
    return class_of(G_->inv(g), G_->inv(h));
}

std::vector<GenPairClass> enumerate_classes(const FiniteGroup& G) {
    PairSpace pairs(G);
    std::vector<GenPairClass> out;
    for (std::uint32_t cls : pairs.generating_classes()) {
        auto [g, h] = pairs.rep(cls);
        out.push_back({g, h, cls, pairs.higman(cls)});
    }
    return out;
}

std::uint32_t higman_invariant(const FiniteGroup& G, std::uint32_t g, std::uint32_t h) {
    return G.class_of(G.commutator(g, h));
}

namespace {

struct OrbitScan {
    // Out^+-orbits over the generating classes, with gamma_{-I} quotients.
    std::vector<std::vector<std::uint32_t>> orbits;  // class lists
};

OrbitScan scan_orbits(const PairSpace& pairs) {
    OrbitScan scan;
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t seed : pairs.generating_classes()) {
        if (seen.count(seed)) continue;
        std::vector<std::uint32_t> orbit;
        std::vector<std::uint32_t> stack{seed};
        seen.insert(seed);
        while (!stack.empty()) {
            std::uint32_t c = stack.back();
            stack.pop_back();
            orbit.push_back(c);
            for (std::uint32_t d : {pairs.gamma0(c), pairs.gamma1728(c), pairs.gamma_inf(c)}) {
                if (seen.insert(d).second) stack.push_back(d);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        scan.orbits.push_back(std::move(orbit));
    }
    std::sort(scan.orbits.begin(), scan.orbits.end());
    return scan;
}

NielsenOrbitReport::Orbit quotient_info(const PairSpace& pairs, const std::vector<std::uint32_t>& orbit) {
    NielsenOrbitReport::Orbit info;
    info.size = orbit.size();
    std::uint64_t fixed = 0;
    for (std::uint32_t c : orbit) {
        std::uint32_t d = pairs.gamma_minus_i(c);
        if (pairs.gamma_minus_i(d) != c)
            throw std::logic_error("gamma_{-I} is not an involution on classes");
        if (d == c) ++fixed;
    }
    // gamma_{-I} is central in Out^+, so on a single orbit it is either
    // trivial or fixed-point free.
    if (fixed != 0 && fixed != orbit.size())
        throw std::logic_error("gamma_{-I} acts inconsistently across an Out^+ orbit");
    info.gamma_minus_i_free = (fixed == 0);
    info.quotient_size = info.gamma_minus_i_free ? orbit.size() / 2 : orbit.size();
    return info;
}

}  // namespace

NielsenOrbitReport out_plus_orbits(const FiniteGroup& G) {
    PairSpace pairs(G);
    OrbitScan scan = scan_orbits(pairs);
    auto m_primes = cusp_comb::m_prime_all(G, pairs);

    std::map<std::uint32_t, NielsenOrbitReport::Stratum> strata;
    for (const auto& orbit : scan.orbits) {
        std::uint32_t hig = pairs.higman(orbit.front());
        auto& st = strata[hig];
        st.higman_class = hig;
        st.higman_order = G.order(G.class_rep(hig));
        st.orbits.push_back(quotient_info(pairs, orbit));
    }

    NielsenOrbitReport report;
    report.total_classes = pairs.generating_classes().size();
    for (auto& [hig, st] : strata) {
        st.m_prime = m_primes.at(hig);
        st.d_prime = cusp_comb::d_prime(G, hig);
        std::uint64_t c = st.higman_order;
        st.modulus = c / std::gcd(c, st.m_prime * st.d_prime);
        st.congruence_pass = true;
        for (const auto& orb : st.orbits)
            if (orb.quotient_size % st.modulus != 0) st.congruence_pass = false;
        report.strata.push_back(st);
    }
    return report;
}

std::vector<CongruenceVerdict> verify_combinatorial_congruence(const FiniteGroup& G,
                                                               std::uint32_t higman_class) {
    PairSpace pairs(G);
    OrbitScan scan = scan_orbits(pairs);

    bool admissible = false;
    std::vector<const std::vector<std::uint32_t>*> relevant;
    for (const auto& orbit : scan.orbits) {
        if (pairs.higman(orbit.front()) == higman_class) {
            relevant.push_back(&orbit);
            admissible = true;
        }
    }
    if (!admissible) throw std::invalid_argument("verify_combinatorial_congruence: class not admissible");

    std::uint64_t c = G.order(G.class_rep(higman_class));
    std::uint64_t mp = cusp_comb::m_prime_all(G, pairs).at(higman_class);
    std::uint64_t dp = cusp_comb::d_prime(G, higman_class);
    std::uint64_t modulus = c / std::gcd(c, mp * dp);

    // Vdovin-style ell-power congruence for simple G (j = 0 then).
    bool simple = G.is_simple();
    std::vector<CongruenceVerdict> out;
    for (const auto* orbit : relevant) {
        auto info = quotient_info(pairs, *orbit);
        CongruenceVerdict v;
        v.orbit_quotient_size = info.quotient_size;
        v.modulus = modulus;
        v.passed = (info.quotient_size % modulus == 0);
        if (simple) {
            for (auto [ell, r] : arith::factorize(c)) {
                if (ell == 2) continue;
                int s = arith::l_valuation(ell, G.size()) - r;
                int j = 0;
                int exponent = (r - 3 * s - j + 1) / 2;  // ceil((r-3s-j)/2)
                if (exponent <= 0) continue;
                std::uint64_t lm = 1;
                for (int i = 0; i < exponent; ++i) lm *= ell;
                v.ell = ell;
                v.ell_modulus = lm;
                v.ell_passed = (info.quotient_size % lm == 0);
                break;  // record the first nontrivial odd-prime form
            }
        }
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// SL2 crosscheck: raw matrix arithmetic, independent of FiniteGroup.

namespace {

struct RawSl2 {
    std::uint32_t p;
    arith::PrimeField F;
    std::vector<Mat2> elems;
    std::vector<std::uint32_t> by_key;  // packed (a,b,c,d) -> index + 1

    explicit RawSl2(std::uint32_t prime) : p(prime), F(prime) {
        by_key.assign(std::size_t(p) * p * p * p, 0);
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b)
                for (std::uint32_t c = 0; c < p; ++c)
                    for (std::uint32_t d = 0; d < p; ++d) {
                        if (F.sub(F.mul(a, d), F.mul(b, c)) != 1) continue;
                        Mat2 m{p, a, b, c, d};
                        by_key[key(m)] = static_cast<std::uint32_t>(elems.size()) + 1;
                        elems.push_back(m);
                    }
    }
    std::size_t key(const Mat2& m) const {
        return ((std::size_t(m.a) * p + m.b) * p + m.c) * p + m.d;
    }
    std::uint32_t index(const Mat2& m) const { return by_key[key(m)] - 1; }
    Mat2 mul(const Mat2& f, const Mat2& g) const {
        return {p, F.add(F.mul(f.a, g.a), F.mul(f.b, g.c)), F.add(F.mul(f.a, g.b), F.mul(f.b, g.d)),
                F.add(F.mul(f.c, g.a), F.mul(f.d, g.c)), F.add(F.mul(f.c, g.b), F.mul(f.d, g.d))};
    }
    Mat2 inv(const Mat2& m) const {
        std::uint32_t det = F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
        std::uint32_t di = F.inv(det);
        return {p, F.mul(m.d, di), F.mul(F.neg(m.b), di), F.mul(F.neg(m.c), di), F.mul(m.a, di)};
    }
    std::uint32_t trace(const Mat2& m) const { return F.add(m.a, m.d); }
    std::uint32_t trace_mul(const Mat2& f, const Mat2& g) const {
        return F.add(F.add(F.mul(f.a, g.a), F.mul(f.b, g.c)), F.add(F.mul(f.c, g.b), F.mul(f.d, g.d)));
    }
    bool generates(const Mat2& g, const Mat2& h) const {
        std::vector<std::uint8_t> seen(elems.size(), 0);
        std::vector<std::uint32_t> stack;
        Mat2 id{p, 1, 0, 0, 1};
        seen[index(id)] = 1;
        stack.push_back(index(id));
        std::size_t count = 0;
        std::uint32_t gi = index(g), hi = index(h);
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            ++count;
            for (std::uint32_t y : {index(mul(elems[x], elems[gi])), index(mul(elems[x], elems[hi]))}) {
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        return count == elems.size();
    }
};

}  // namespace

MatPair lift_triple(std::uint32_t p, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    arith::PrimeField F(p);
    x %= p; y %= p; z %= p;
    // g = companion matrix of trace x; search h = [[a, b], [c, d]] with
    // a + d = y, tr(g h) = z, det h = 1.
    Mat2 g{p, x, F.neg(1), 1, 0};
    auto try_a = [&](std::uint32_t a) -> std::optional<MatPair> {
        std::uint32_t d = F.sub(y, a);
        // tr(gh) = x a + b - c = z, so b - c = z - x a =: e.
        std::uint32_t e = F.sub(z, F.mul(x, a));
        // det h = a d - (c + e) c = 1: c^2 + e c + (1 - a d) = 0.
        std::uint32_t disc = F.sub(F.mul(e, e), F.mul(4 % p, F.sub(1, F.mul(a, d))));
        if (p > 2 && F.legendre(disc) == -1) return std::nullopt;
        std::uint32_t c;
        if (p == 2) {
            bool found = false;
            c = 0;
            for (std::uint32_t cc = 0; cc < 2; ++cc) {
                if (F.add(F.add(F.mul(cc, cc), F.mul(e, cc)), F.sub(1, F.mul(a, d))) == 0) {
                    c = cc;
                    found = true;
                    break;
                }
            }
            if (!found) return std::nullopt;
        } else {
            std::uint32_t s = *F.sqrt(disc);
            c = F.mul(F.sub(s, e), F.inv(2));
        }
        std::uint32_t b = F.add(c, e);
        MatPair mp{g, Mat2{p, a, b, c, d}};
        return mp;
    };
    std::mt19937 rng(0xC0FFEE ^ (std::uint64_t(p) << 16) ^ (x * 7919u) ^ (y * 104729u) ^ z);
    for (int trial = 0; trial < 32; ++trial) {
        if (auto r = try_a(rng() % p)) return *r;
    }
    for (std::uint32_t a = 0; a < p; ++a) {
        if (auto r = try_a(a)) return *r;
    }
    throw std::runtime_error("lift_triple: no lift found (T(triple) = 2?)");
}

Sl2Crosscheck sl2_crosscheck(std::uint32_t p) {
    if (p < 3 || p > 13) throw std::invalid_argument("sl2_crosscheck: desk scale is p in {3,...,13}");
    Sl2Crosscheck result;
    result.p = p;
    RawSl2 G(p);
    const arith::PrimeField& F = G.F;
    surface::PointTable table = surface::PointTable::enumerate(p, -2);

    // Star point indexing.
    std::vector<std::size_t> star_of_table(table.size(), SIZE_MAX);
    std::vector<surface::SurfacePoint> stars;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.is_star(i)) {
            star_of_table[i] = stars.size();
            stars.push_back(table.point_at(i));
        }
    }
    result.star_points = stars.size();
    const std::uint32_t tneg2 = F.reduce(-2);

    // Pass 1: count the fiber over each star point and keep one witness pair.
    const std::size_t N = G.elems.size();
    std::vector<std::uint64_t> fiber_count(stars.size(), 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> witness(stars.size(), {0, 0});
    std::vector<std::uint8_t> has_witness(stars.size(), 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nonstar_witnesses;
    for (std::uint32_t gi = 0; gi < N; ++gi) {
        const Mat2& g = G.elems[gi];
        std::uint32_t tg = G.trace(g);
        for (std::uint32_t hi = 0; hi < N; ++hi) {
            const Mat2& h = G.elems[hi];
            std::uint32_t th = G.trace(h);
            std::uint32_t tgh = G.trace_mul(g, h);
            // Fricke: tr[g,h] = x^2 + y^2 + z^2 - xyz - 2.
            std::uint32_t s = F.add(F.add(F.mul(tg, tg), F.mul(th, th)), F.mul(tgh, tgh));
            std::uint32_t tc = F.sub(F.sub(s, F.mul(F.mul(tg, th), tgh)), 2 % p);
            if (tc != tneg2) continue;
            auto idx = table.index_of({tg, th, tgh});
            if (!idx) throw std::logic_error("sl2_crosscheck: trace triple off the surface");
            std::size_t si = star_of_table[*idx];
            if (si == SIZE_MAX) {
                if (nonstar_witnesses.size() < 16) nonstar_witnesses.emplace_back(gi, hi);
                continue;
            }
            ++fiber_count[si];
            if (!has_witness[si]) {
                witness[si] = {gi, hi};
                has_witness[si] = 1;
            }
        }
    }

    // Dihedral-type pairs (non-star fibers) must not generate.
    bool nonstar_ok = true;
    for (auto [gi, hi] : nonstar_witnesses)
        if (G.generates(G.elems[gi], G.elems[hi])) nonstar_ok = false;

    // Pass 2: per star point, the fiber must be a single GL2-orbit of the
    // witness, the witness must generate, and gamma_inf must intertwine Rot1.
    const std::uint64_t pgl2 = std::uint64_t(p) * (std::uint64_t(p) * p - 1);
    bool bijection = (stars.size() == 0 || std::size_t(std::count(has_witness.begin(), has_witness.end(), 1)) == stars.size());
    bool intertwine = true;
    std::vector<std::uint64_t> group_orbit_sizes;

    // Conjugators: one per PGL2 element (first nonzero entry normalized to 1).
    std::vector<Mat2> conjugators;
    if (!stars.empty()) {
        for (std::uint32_t a = 0; a < p && bijection; ++a)
            for (std::uint32_t b = 0; b < p; ++b)
                for (std::uint32_t c = 0; c < p; ++c)
                    for (std::uint32_t d = 0; d < p; ++d) {
                        std::uint32_t first = a ? a : (b ? b : (c ? c : d));
                        if (first != 1) continue;
                        if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
                        conjugators.push_back({p, a, b, c, d});
                    }
        if (conjugators.size() != pgl2) throw std::logic_error("sl2_crosscheck: PGL2 count");
    }

    std::vector<std::uint8_t> star_seen(stars.size(), 0);
    for (std::size_t si = 0; si < stars.size() && bijection; ++si) {
        auto [gi, hi] = witness[si];
        const Mat2 g = G.elems[gi], h = G.elems[hi];
        if (!G.generates(g, h)) {
            bijection = false;
            break;
        }
        std::unordered_set<std::uint64_t> orbit;
        orbit.reserve(pgl2 * 2);
        for (const Mat2& m : conjugators) {
            Mat2 mi = G.inv(m);
            Mat2 cg = G.mul(G.mul(m, g), mi);
            Mat2 ch = G.mul(G.mul(m, h), mi);
            orbit.insert(std::uint64_t(G.index(cg)) * N + G.index(ch));
        }
        if (orbit.size() != fiber_count[si]) {
            bijection = false;
            break;
        }
        // gamma_inf on the witness matches Rot1 on the triple.
        surface::SurfacePoint P = stars[si];
        Mat2 gh = G.mul(g, h);
        surface::SurfacePoint Q{G.trace(g), G.trace(gh), G.trace_mul(g, gh)};
        surface::SurfacePoint R = action::apply(action::Gen::Rot1, P, F);
        if (!(Q == R)) intertwine = false;
        // Group-side gamma_inf orbit length: least k with (g, g^k h) in the
        // GL2-orbit of (g, h).
        if (!star_seen[si]) {
            std::uint64_t len = 0;
            Mat2 cur = h;
            surface::SurfacePoint walk = P;
            do {
                cur = G.mul(g, cur);
                ++len;
                // Mark the star points traversed so each class is counted once.
                auto widx = table.index_of(walk);
                star_seen[star_of_table[*widx]] = 1;
                walk = action::apply(action::Gen::Rot1, walk, F);
            } while (!orbit.count(std::uint64_t(gi) * N + G.index(cur)));
            group_orbit_sizes.push_back(len);
        }
    }

    result.gl2_classes = stars.size();
    result.bijection_ok = bijection && nonstar_ok;
    result.intertwine_ok = intertwine;

    // Surface-side Rot1 orbit multiset.
    std::vector<std::uint64_t> surface_sizes;
    if (stars.size() > 0) {
        action::Gen rot[] = {action::Gen::Rot1};
        auto dec = action::orbit_decompose(table, rot, action::Restrict::Star);
        for (const auto& orb : dec.orbits) surface_sizes.push_back(orb.size);
    }
    std::sort(group_orbit_sizes.begin(), group_orbit_sizes.end());
    std::sort(surface_sizes.begin(), surface_sizes.end());
    result.orbit_multisets_ok = (group_orbit_sizes == surface_sizes);

    // Lift surjectivity: every triple with T != 2 lifts with matching traces.
    bool lifts = true;
    for (std::uint32_t x = 0; x < p && lifts; ++x)
        for (std::uint32_t y = 0; y < p && lifts; ++y)
            for (std::uint32_t z = 0; z < p && lifts; ++z) {
                std::uint32_t s = F.add(F.add(F.mul(x, x), F.mul(y, y)), F.mul(z, z));
                std::uint32_t tv = F.sub(F.sub(s, F.mul(F.mul(x, y), z)), 2 % p);
                if (tv == 2 % p) continue;
                MatPair mp = lift_triple(p, x, y, z);
                if (G.trace(mp.g) != x || G.trace(mp.h) != y || G.trace_mul(mp.g, mp.h) != z)
                    lifts = false;
            }
    result.lift_surjective = lifts;
    return result;
}

}  // namespace markoff::nielsen
