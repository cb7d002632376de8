#include "markoff/congruence.hpp"

#include <numeric>
#include <stdexcept>

#include "markoff/action.hpp"
#include "markoff/arith.hpp"
#include "markoff/groups.hpp"
#include "markoff/surface.hpp"

namespace markoff::congruence {

using arith::PrimeField;

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::MainDivisibility: return "main_divisibility";
        case Rule::Parabolic: return "parabolic";
        case Rule::Hyperbolic: return "hyperbolic";
        case Rule::Elliptic: return "elliptic";
        case Rule::GeneralLadic: return "general_ladic";
    }
    return "?";
}

RequiredModulus required_modulus(std::uint32_t p, std::int64_t t, std::uint64_t ell) {
    PrimeField F(p);
    std::uint32_t tr = F.reduce(t);
    if (tr == 2 % p) throw std::invalid_argument("required_modulus: t = 2 excluded");

    if (ell != 0) {
        if (ell == 2 || !arith::is_prime(ell))
            throw std::invalid_argument("required_modulus: ell must be an odd prime");
        std::uint64_t n = arith::n_of_trace(tr, F);
        int r = arith::l_valuation(ell, n);
        int s = arith::l_valuation(ell, std::uint64_t(p) * (std::uint64_t(p) * p - 1)) - r;
        int e = std::max(r - s, 0);
        std::uint64_t modulus = 1;
        for (int i = 0; i < e; ++i) modulus *= ell;
        return {modulus, false, Rule::GeneralLadic};
    }

    if (tr == F.reduce(-2)) return {p, false, Rule::Parabolic};
    std::uint64_t n = arith::n_of_trace(tr, F);
    std::uint32_t disc = F.sub(F.mul(tr, tr), 4 % p);
    if (F.legendre(disc) == 1) {
        std::uint64_t q1 = 2 * (std::uint64_t(p) - 1) / n;
        return {n / std::gcd(n, q1), true, Rule::Hyperbolic};
    }
    std::uint64_t q1 = 2 * (std::uint64_t(p) + 1) / n;
    return {n / std::gcd(n, q1), true, Rule::Elliptic};
}

std::vector<CongruenceVerdict> verify_surface(std::uint32_t p, std::int64_t t, unsigned threads) {
    if (p < 3) throw std::invalid_argument("verify_surface: p >= 3 required");
    PrimeField F(p);
    std::uint32_t tr = F.reduce(t);
    if (tr == 2 % p) throw std::invalid_argument("verify_surface: t = 2 excluded");

    surface::PointTable table = surface::PointTable::enumerate(p, t, threads);
    auto dec = action::orbit_decompose(table, action::default_gens(), action::Restrict::Star);

    std::vector<CongruenceVerdict> out;
    const bool is_minus2 = (tr == F.reduce(-2));
    for (const auto& orbit : dec.orbits) {
        if (is_minus2) {
            CongruenceVerdict v;
            v.p = p;
            v.t = tr;
            v.rep_key = orbit.rep_key;
            v.orbit_size = orbit.size;
            v.rule = Rule::MainDivisibility;
            v.modulus = p;
            v.twice_orbit = false;
            v.passed = (orbit.size % p == 0);
            v.holds_without_factor2 = v.passed;
            out.push_back(v);
            continue;
        }
        std::uint64_t n = arith::n_of_trace(tr, F);
        // ell-adic ladder for every odd prime dividing n_p(t).
        for (auto [ell, e] : arith::factorize(n)) {
            if (ell == 2) continue;
            RequiredModulus rm = required_modulus(p, t, ell);
            CongruenceVerdict v;
            v.p = p;
            v.t = tr;
            v.rep_key = orbit.rep_key;
            v.orbit_size = orbit.size;
            v.rule = rm.rule;
            v.ell = ell;
            v.modulus = rm.modulus;
            v.twice_orbit = false;
            v.passed = (orbit.size % rm.modulus == 0);
            v.holds_without_factor2 = v.passed;
            out.push_back(v);
        }
        // The hyperbolic/elliptic gcd bound on 2|O|.
        RequiredModulus rm = required_modulus(p, t, 0);
        CongruenceVerdict v;
        v.p = p;
        v.t = tr;
        v.rep_key = orbit.rep_key;
        v.orbit_size = orbit.size;
        v.rule = rm.rule;
        v.modulus = rm.modulus;
        v.twice_orbit = rm.twice_orbit;
        v.passed = ((2 * orbit.size) % rm.modulus == 0);
        v.holds_without_factor2 = (orbit.size % rm.modulus == 0);
        out.push_back(v);
    }
    return out;
}

CentralizerCheck centralizer_order_check(std::uint32_t p, std::int64_t t) {
    if (p < 3) throw std::invalid_argument("centralizer_order_check: p odd required");
    PrimeField F(p);
    std::uint32_t tr = F.reduce(t);
    if (tr == 2 % p) throw std::invalid_argument("centralizer_order_check: t = 2 excluded");

    CentralizerCheck check;
    check.p = p;
    check.t = tr;
    if (tr == F.reduce(-2))
        check.expected = 2ull * p;
    else if (F.legendre(F.sub(F.mul(tr, tr), 4 % p)) == 1)
        check.expected = p - 1;
    else
        check.expected = p + 1;

    groups::FiniteGroup G = groups::sl2(p);
    // Companion matrix [[0, -1], [1, t]]: trace t, off-diagonal, noncentral.
    std::uint32_t c = G.index_of(groups::Mat2{p, 0, F.neg(1), 1, tr});
    check.brute = G.centralizer(c).size();
    return check;
}

}  // namespace markoff::congruence
