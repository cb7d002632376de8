#ifndef MARKOFF_CONGRUENCE_HPP
#define MARKOFF_CONGRUENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace markoff::congruence {

enum class Rule : std::uint8_t { MainDivisibility, Parabolic, Hyperbolic, Elliptic, GeneralLadic };

const char* rule_name(Rule r);

struct CongruenceVerdict {
    std::uint32_t p = 0;
    std::uint32_t t = 0;           // canonical residue
    std::uint64_t rep_key = 0;     // orbit representative (packed)
    std::uint64_t orbit_size = 0;
    Rule rule = Rule::MainDivisibility;
    std::uint64_t ell = 0;         // for GeneralLadic
    std::uint64_t modulus = 1;
    bool twice_orbit = false;      // the theorem bounds 2|O| instead of |O|
    bool passed = false;
    /// For twice_orbit rules: whether the modulus happens to divide |O|
    /// itself (recorded, never required).
    bool holds_without_factor2 = false;
};

struct RequiredModulus {
    std::uint64_t modulus = 1;
    bool twice_orbit = false;
    Rule rule = Rule::Parabolic;
};

/// ell = 0 selects the parabolic/hyperbolic/elliptic case split on
/// legendre(t^2 - 4, p); an odd prime ell selects the ell-adic ladder
/// ell^max(r - s, 0) with r = ord_ell(n_p(t)), r + s = ord_ell(p(p^2-1)).
/// t = 2 is rejected.
RequiredModulus required_modulus(std::uint32_t p, std::int64_t t, std::uint64_t ell = 0);

/// One verdict set per orbit of star points of X_t(p): the main p-divisibility
/// for t = -2, otherwise the ell-adic rule for every odd prime ell | n_p(t)
/// plus the hyperbolic/elliptic gcd bound.  All verdicts must pass; a failure
/// is reported in the returned records (never silently dropped).
std::vector<CongruenceVerdict> verify_surface(std::uint32_t p, std::int64_t t, unsigned threads = 1);

struct CentralizerCheck {
    std::uint32_t p = 0;
    std::uint32_t t = 0;
    std::uint64_t expected = 0;  // 2p / p-1 / p+1 by the case split
    std::uint64_t brute = 0;     // scan of SL2(F_p)
    bool ok() const { return expected == brute; }
};

/// Brute-force centralizer order of a noncentral trace-t matrix in SL2(F_p)
/// against the parabolic/hyperbolic/elliptic case table.  p odd, t != 2.
CentralizerCheck centralizer_order_check(std::uint32_t p, std::int64_t t);

}  // namespace markoff::congruence

#endif
