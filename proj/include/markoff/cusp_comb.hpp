#ifndef MARKOFF_CUSP_COMB_HPP
#define MARKOFF_CUSP_COMB_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "markoff/nielsen.hpp"

namespace markoff::cusp_comb {

/// A generating pair modulo simultaneous conjugation and the twist
/// (u, h) -> (u, u^k h); equivalently a gamma_inf-orbit of Inn-classes.
struct DeltaClass {
    std::uint32_t u = 0, h = 0;        // representative pair
    std::uint32_t higman_class = 0;    // class of [u^-1, h^-1] ~ [u, h]
    std::uint64_t width = 0;           // gamma_inf-orbit length = k_{u,h}
};

std::vector<DeltaClass> delta_classes(const groups::FiniteGroup& G);

/// Smallest k >= 1 with (u, h) conjugate to (u, u^k h); divides |u|.
std::uint64_t k_uh(const groups::FiniteGroup& G, std::uint32_t u, std::uint32_t h);

/// A_{G,u,h} = { a in C_G(M_{u,h}) : a h a^-1 in <u> h }, M_{u,h} = <u, h^-1 u^-1 h>.
std::vector<std::uint32_t> A_group(const groups::FiniteGroup& G, std::uint32_t u, std::uint32_t h);

struct CuspRecord {
    std::uint32_t u = 0, h = 0;
    std::uint32_t higman_class = 0;
    std::uint64_t width = 0;            // gamma_inf-orbit length of the class
    std::uint64_t M_order = 0;          // |<u, h^-1 u^-1 h>|
    std::uint64_t k = 0;                // k_{u,h}
    std::uint64_t A_order = 0;          // |A_{G,u,h}|
    std::uint64_t vertical_order = 0;   // |A_{G,u,h} cap <[u^-1,h^-1]>|
};

CuspRecord cusp_record(const groups::FiniteGroup& G, std::uint32_t u, std::uint32_t h);

/// |A_{G,u,h} cap <[u^-1, h^-1]>|, the vertical automorphism order of the
/// cusp on the ramification divisor.
std::uint64_t cusp_automorphism_order(const CuspRecord& rec);
std::uint64_t cusp_automorphism_order(const groups::FiniteGroup& G, std::uint32_t u, std::uint32_t h);

/// lcm of the vertical automorphism orders over the delta classes with the
/// given Higman class.
std::uint64_t m_prime(const groups::FiniteGroup& G, std::uint32_t higman_class);
/// m' for every admissible Higman class in one sweep over a shared PairSpace.
std::map<std::uint32_t, std::uint64_t> m_prime_all(const groups::FiniteGroup& G,
                                                   const nielsen::PairSpace& pairs);
/// |C_G(<c>)| / |c|.
std::uint64_t d_prime(const groups::FiniteGroup& G, std::uint32_t higman_class);

struct CuspCrosscheck {
    std::uint32_t p = 0;
    std::uint64_t group_side = 0;    // gamma_inf-orbits on trace -2 GL2-classes
    std::uint64_t surface_side = 0;  // Rot1-orbits on the star points
    bool ok() const { return group_side == surface_side; }
};

/// Cusp count two ways: group-theoretically and via the surface action.
/// Desk scale: p in {5,7,11,13}.
CuspCrosscheck cusp_crosscheck(std::uint32_t p);

}  // namespace markoff::cusp_comb

#endif
