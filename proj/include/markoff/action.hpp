#ifndef MARKOFF_ACTION_HPP
#define MARKOFF_ACTION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "markoff/surface.hpp"

namespace markoff::action {

/// Named generators of the automorphism group acting on the surfaces X_t.
/// R_i are Vieta involutions, Swaps are coordinate transpositions, Rot_i the
/// rotations R_j o tau (each freezing coordinate i), and the Gammas are the
/// monodromy generators around j = 0, 1728, infinity.
enum class Gen : std::uint8_t {
    R1, R2, R3,
    Swap12, Swap23, Swap13,
    Rot1, Rot2, Rot3,
    Gamma0, Gamma1728, GammaInf, GammaMinusI,
};

const char* gen_name(Gen g);

/// A word in the generators, applied right-to-left.
struct MoveWord {
    std::vector<Gen> gens;
};

surface::SurfacePoint apply(Gen g, const surface::SurfacePoint& P, const arith::PrimeField& F);
surface::SurfacePoint apply(const MoveWord& w, const surface::SurfacePoint& P, const arith::PrimeField& F);

enum class Restrict : std::uint8_t { All, Star };

struct OrbitDecomposition {
    struct Orbit {
        std::uint64_t rep_key;  // minimal packed key in the orbit
        std::uint64_t size;
    };
    static constexpr std::uint32_t kNone = UINT32_MAX;

    std::vector<std::uint32_t> orbit_id;  // per table index; kNone outside subset
    std::vector<Orbit> orbits;            // ordered by rep_key
    std::vector<Gen> gens;
    Restrict restricted = Restrict::All;

    bool transitive() const { return orbits.size() == 1; }
    std::string generator_set_id() const;
};

/// BFS orbit partition of the (sub)set under the generators.  Checks that
/// every generator preserves the subset and throws otherwise.  Orbit ids
/// are ranked by representative key, independent of traversal order.
OrbitDecomposition orbit_decompose(const surface::PointTable& table, std::span<const Gen> gens,
                                   Restrict restrict);

/// Rot1-orbit sizes on the star points of C_1(a)_t.  Every size must equal
/// n_p(a); a mismatch falsifies the freeness lemma and throws.
/// Requires p >= 3 and t != 2.
std::vector<std::uint64_t> rot_orbits_on_fiber(std::uint32_t p, std::int64_t t, std::uint32_t a);

struct PermutationInfo {
    std::vector<std::uint32_t> images;  // over subset positions
    bool even = true;
};

/// The permutation induced by g on the chosen subset, with its parity.
PermutationInfo permutation_of(Gen g, const surface::PointTable& table, Restrict restrict);

/// Default generating set for the full group: R3 plus two transpositions
/// generate every Vieta involution and every coordinate permutation.
std::span<const Gen> default_gens();
/// The orientation-preserving generators gamma_0, gamma_1728, gamma_inf.
std::span<const Gen> gamma_gens();

}  // namespace markoff::action

#endif
