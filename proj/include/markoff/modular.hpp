#ifndef MARKOFF_MODULAR_HPP
#define MARKOFF_MODULAR_HPP

#include <cstdint>
#include <vector>

#include "markoff/arith.hpp"

namespace markoff::modular {

/// Ramification data of the degree-|X*_{-2}(p)| cover: multisets of orbit
/// sizes of gamma_0, gamma_1728 and Rot1 on the star points.
struct RamificationProfile {
    std::uint32_t p = 0;
    std::uint64_t degree = 0;
    std::vector<std::uint64_t> fiber0;     // gamma_0 orbit sizes, in {1, 3}
    std::vector<std::uint64_t> fiber1728;  // gamma_1728 orbit sizes, in {1, 2}
    std::vector<std::uint64_t> cusps;      // Rot1 orbit sizes (cusp widths)
};

/// Orbit counts by BFS; the {1,3} / {1,2} shape and the fixed-point counts
/// are validated against the surface (violations throw).  p >= 5.
RamificationProfile ramification_profile(std::uint32_t p);

struct GenusReport {
    std::uint32_t p = 0;
    bool transitive = false;
    std::uint64_t degree = 0;
    std::int64_t genus_rh = -1;          // valid when transitive
    arith::Rational genus_closed;        // closed form (connected case)
    arith::Rational epsilon;
    arith::Rational cusp_count_formula;
    RamificationProfile profile;
    /// Riemann-Hurwitz genus per component when the action is not
    /// transitive; single entry otherwise.
    std::vector<std::int64_t> component_genera;
};

/// Genus two ways.  Transitivity is checked first; when it holds the two
/// values must agree exactly (mismatch throws).
GenusReport genus(std::uint32_t p);

/// Closed-form cusp count; throws when the formula value is not a
/// nonnegative integer.  p >= 5.
arith::Rational cusp_count_closed(std::uint32_t p);

struct MonodromyReport {
    std::uint32_t p = 0;
    std::uint64_t d_p = 0;  // |Y*(p)| = |X*_{-2}(p)| / 4
    bool transitive_on_quotient = false;
    bool gamma0_even = false, gamma1728_even = false, gamma_inf_even = false;
    bool alt_predicted = false;  // p = 1, 3, 13, 15 mod 16
    /// alt predicted <=> all three generator parities even.
    bool parity_consistent = false;
};

/// Quotient Y*(p) of the star points by the free double-sign-change action,
/// with generator parities checked against the alternating/symmetric
/// prediction.  p >= 5.
MonodromyReport monodromy_report(std::uint32_t p);

}  // namespace markoff::modular

#endif
