#include "markoff/modular.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "markoff/action.hpp"
#include "markoff/surface.hpp"

namespace markoff::modular {

using arith::PrimeField;
using arith::Rational;
using surface::PointTable;
using surface::SurfacePoint;

namespace {

std::vector<std::uint64_t> orbit_sizes(const PointTable& table, action::Gen g) {
    action::Gen gens[] = {g};
    auto dec = action::orbit_decompose(table, gens, action::Restrict::Star);
    std::vector<std::uint64_t> sizes;
    sizes.reserve(dec.orbits.size());
    for (const auto& orb : dec.orbits) sizes.push_back(orb.size);
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

RamificationProfile ramification_profile(std::uint32_t p) {
    if (p < 5) throw std::invalid_argument("ramification_profile: p >= 5 required");
    PointTable table = PointTable::enumerate(p, -2);
    RamificationProfile prof;
    prof.p = p;
    prof.degree = table.star_size();
    prof.fiber0 = orbit_sizes(table, action::Gen::Gamma0);
    prof.fiber1728 = orbit_sizes(table, action::Gen::Gamma1728);
    prof.cusps = orbit_sizes(table, action::Gen::Rot1);

    // gamma_0 has at most one fixed point, all other orbits of size 3;
    // gamma_1728 has two fixed points iff p = 1, 7 mod 8, the rest size 2.
    std::uint64_t fix0 = 0, fix1728 = 0;
    for (std::uint64_t s : prof.fiber0) {
        if (s == 1)
            ++fix0;
        else if (s != 3)
            throw std::runtime_error("ramification_profile: gamma_0 orbit size not in {1,3}");
    }
    for (std::uint64_t s : prof.fiber1728) {
        if (s == 1)
            ++fix1728;
        else if (s != 2)
            throw std::runtime_error("ramification_profile: gamma_1728 orbit size not in {1,2}");
    }
    if (fix0 > 1) throw std::runtime_error("ramification_profile: gamma_0 has multiple fixed points");
    std::uint64_t expected_fix1728 = (p % 8 == 1 || p % 8 == 7) ? 2 : 0;
    if (fix1728 != expected_fix1728)
        throw std::runtime_error("ramification_profile: gamma_1728 fixed-point count off");

    // Cusp widths are exactly the n_p(a) with multiplicity |C_1(a)*| / n_p(a).
    PrimeField F(p);
    std::map<std::uint64_t, std::uint64_t> expected_widths;
    for (std::uint32_t a = 0; a < p; ++a) {
        surface::ConicFiber fib = surface::conic_fiber(p, -2, a);
        if (fib.star_size == 0) continue;
        std::uint64_t n = arith::n_of_trace(a, F);
        if (fib.star_size % n != 0)
            throw std::runtime_error("ramification_profile: conic star size not divisible by n_p(a)");
        expected_widths[n] += fib.star_size / n;
    }
    std::map<std::uint64_t, std::uint64_t> seen_widths;
    for (std::uint64_t s : prof.cusps) ++seen_widths[s];
    if (seen_widths != expected_widths)
        throw std::runtime_error("ramification_profile: cusp width multiset mismatch");
    return prof;
}

Rational cusp_count_closed(std::uint32_t p) {
    if (p < 5) throw std::invalid_argument("cusp_count_closed: p >= 5 required");
    Rational count = Rational(p - 1, 2) * arith::phi_capital(p - 1) +
                     Rational(p + 1, 2) * arith::phi_capital(p + 1);
    if (p % 4 == 1)
        count += Rational(-5 * std::int64_t(p) + 11, 4);
    else
        count += Rational(-7 * std::int64_t(p) - 1, 4);
    if (boost::multiprecision::denominator(count) != 1 || count < 0)
        throw std::runtime_error("cusp_count_closed: formula value is not a nonnegative integer");
    return count;
}

namespace {

Rational epsilon_of(std::uint32_t p) {
    switch (p % 8) {
        case 1: return Rational(7 * std::int64_t(p), 8) - Rational(29, 24);
        case 3: return Rational(5 * std::int64_t(p), 8) + Rational(19, 24);
        case 5: return Rational(7 * std::int64_t(p), 8) - Rational(17, 24);
        default: return Rational(5 * std::int64_t(p), 8) + Rational(7, 24);
    }
}

std::int64_t rh_genus(std::uint64_t degree, std::uint64_t f0, std::uint64_t f1728, std::uint64_t finf) {
    // 2 - 2g = 2 deg - sum over the three fibers of (deg - |fiber|).
    std::int64_t twice = 2 * std::int64_t(degree) -
                         (3 * std::int64_t(degree) - std::int64_t(f0) - std::int64_t(f1728) -
                          std::int64_t(finf));
    if ((2 - twice) % 2 != 0) throw std::runtime_error("genus: Riemann-Hurwitz parity violated");
    std::int64_t g = (2 - twice) / 2;
    if (g < 0) throw std::runtime_error("genus: negative Riemann-Hurwitz genus");
    return g;
}

}  // namespace

GenusReport genus(std::uint32_t p) {
    if (p < 5) throw std::invalid_argument("genus: p >= 5 required");
    GenusReport rep;
    rep.p = p;
    rep.profile = ramification_profile(p);
    rep.degree = rep.profile.degree;

    PointTable table = PointTable::enumerate(p, -2);
    auto dec = action::orbit_decompose(table, action::default_gens(), action::Restrict::Star);
    rep.transitive = dec.transitive();

    rep.epsilon = epsilon_of(p);
    rep.cusp_count_formula = cusp_count_closed(p);
    rep.genus_closed = Rational(std::int64_t(p) * p, 12) -
                       Rational(p - 1, 4) * arith::phi_capital(p - 1) -
                       Rational(p + 1, 4) * arith::phi_capital(p + 1) + rep.epsilon;

    if (std::uint64_t(boost::multiprecision::numerator(rep.cusp_count_formula).convert_to<std::uint64_t>()) !=
        rep.profile.cusps.size())
        throw std::runtime_error("genus: closed-form cusp count disagrees with Rot1 orbits");

    if (rep.transitive) {
        rep.genus_rh = rh_genus(rep.degree, rep.profile.fiber0.size(), rep.profile.fiber1728.size(),
                                rep.profile.cusps.size());
        rep.component_genera = {rep.genus_rh};
        if (boost::multiprecision::denominator(rep.genus_closed) != 1 ||
            Rational(rep.genus_rh) != rep.genus_closed)
            throw std::runtime_error("genus: Riemann-Hurwitz and closed form disagree");
    } else {
        // Per-component Riemann-Hurwitz; no single genus is reported.
        const PrimeField& F = table.field();
        const action::Gen fiber_gens[3] = {action::Gen::Gamma0, action::Gen::Gamma1728,
                                           action::Gen::Rot1};
        for (std::uint32_t comp = 0; comp < dec.orbits.size(); ++comp) {
            std::uint64_t counts[3] = {0, 0, 0};
            for (int gi = 0; gi < 3; ++gi) {
                std::vector<std::uint8_t> seen(table.size(), 0);
                for (std::size_t i = 0; i < table.size(); ++i) {
                    if (!table.is_star(i) || seen[i] || dec.orbit_id[i] != comp) continue;
                    std::size_t j = i;
                    while (!seen[j]) {
                        seen[j] = 1;
                        j = *table.index_of(action::apply(fiber_gens[gi], table.point_at(j), F));
                    }
                    ++counts[gi];
                }
            }
            rep.component_genera.push_back(rh_genus(dec.orbits[comp].size, counts[0], counts[1], counts[2]));
        }
    }
    return rep;
}

MonodromyReport monodromy_report(std::uint32_t p) {
    if (p < 5) throw std::invalid_argument("monodromy_report: p >= 5 required");
    MonodromyReport rep;
    rep.p = p;
    PointTable table = PointTable::enumerate(p, -2);
    const PrimeField& F = table.field();

    // Quotient by V = {1, (x,-y,-z), (-x,y,-z), (-x,-y,z)} (free on stars).
    auto v_images = [&](const SurfacePoint& P) {
        return std::array<SurfacePoint, 4>{
            P, SurfacePoint{P.x, F.neg(P.y), F.neg(P.z)}, SurfacePoint{F.neg(P.x), P.y, F.neg(P.z)},
            SurfacePoint{F.neg(P.x), F.neg(P.y), P.z}};
    };
    std::vector<std::size_t> star_indices;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table.is_star(i)) star_indices.push_back(i);

    std::vector<std::uint64_t> canon(table.size(), 0);
    for (std::size_t i : star_indices) {
        SurfacePoint P = table.point_at(i);
        auto imgs = v_images(P);
        std::uint64_t best = UINT64_MAX;
        int distinct = 0;
        for (const SurfacePoint& Q : imgs) {
            auto j = table.index_of(Q);
            if (!j || !table.is_star(*j))
                throw std::runtime_error("monodromy_report: V does not preserve the star set");
            std::uint64_t key = table.keys()[*j];
            if (key == table.keys()[i]) ++distinct;
            best = std::min(best, key);
        }
        if (distinct != 1) throw std::runtime_error("monodromy_report: V does not act freely");
        canon[i] = best;
    }

    // Dense quotient ids ordered by canonical key.
    std::vector<std::uint64_t> reps;
    for (std::size_t i : star_indices)
        if (canon[i] == table.keys()[i]) reps.push_back(canon[i]);
    std::sort(reps.begin(), reps.end());
    rep.d_p = reps.size();
    std::uint64_t expected = (p % 4 == 1) ? std::uint64_t(p) * (p + 3) / 4 : std::uint64_t(p) * (p - 3) / 4;
    if (rep.d_p != expected) throw std::runtime_error("monodromy_report: d_p formula mismatch");

    auto quotient_index = [&](std::size_t table_idx) {
        auto it = std::lower_bound(reps.begin(), reps.end(), canon[table_idx]);
        return static_cast<std::uint32_t>(it - reps.begin());
    };

    auto quotient_perm = [&](action::Gen g) {
        std::vector<std::uint32_t> img(reps.size(), UINT32_MAX);
        for (std::size_t i : star_indices) {
            auto j = table.index_of(action::apply(g, table.point_at(i), F));
            std::uint32_t from = quotient_index(i), to = quotient_index(*j);
            if (img[from] == UINT32_MAX)
                img[from] = to;
            else if (img[from] != to)
                throw std::runtime_error("monodromy_report: action does not descend to the quotient");
        }
        return img;
    };

    auto parity_even = [&](const std::vector<std::uint32_t>& img) {
        std::vector<std::uint8_t> seen(img.size(), 0);
        std::size_t cycles = 0;
        for (std::size_t s = 0; s < img.size(); ++s) {
            if (seen[s]) continue;
            ++cycles;
            std::size_t j = s;
            while (!seen[j]) {
                seen[j] = 1;
                j = img[j];
            }
        }
        return ((img.size() - cycles) % 2) == 0;
    };

    auto perm0 = quotient_perm(action::Gen::Gamma0);
    auto perm1728 = quotient_perm(action::Gen::Gamma1728);
    auto perminf = quotient_perm(action::Gen::GammaInf);
    rep.gamma0_even = parity_even(perm0);
    rep.gamma1728_even = parity_even(perm1728);
    rep.gamma_inf_even = parity_even(perminf);

    // Transitivity on the quotient under the three generators.
    {
        std::vector<std::uint8_t> seen(reps.size(), 0);
        std::vector<std::uint32_t> stack{0};
        seen[0] = 1;
        std::size_t count = 0;
        while (!stack.empty()) {
            std::uint32_t i = stack.back();
            stack.pop_back();
            ++count;
            for (const auto* perm : {&perm0, &perm1728, &perminf}) {
                std::uint32_t j = (*perm)[i];
                if (!seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        rep.transitive_on_quotient = (count == reps.size());
    }

    std::uint32_t r = p % 16;
    rep.alt_predicted = (r == 1 || r == 3 || r == 13 || r == 15);
    bool all_even = rep.gamma0_even && rep.gamma1728_even && rep.gamma_inf_even;
    rep.parity_consistent = (rep.alt_predicted == all_even);
    return rep;
}

}  // namespace markoff::modular
