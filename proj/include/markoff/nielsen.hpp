#ifndef MARKOFF_NIELSEN_HPP
#define MARKOFF_NIELSEN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "markoff/groups.hpp"

namespace markoff::nielsen {

/// The Inn(G)-classes of ordered pairs (g, h) in G x G, with O(1)
/// classification.  A pair is put in canonical position by conjugating its
/// first entry to its conjugacy class representative; two pairs (r, h) and
/// (r, h') are then Inn-equivalent exactly when h, h' lie in the same orbit
/// of the conjugation action of C_G(r).
class PairSpace {
public:
    explicit PairSpace(const groups::FiniteGroup& G);

    const groups::FiniteGroup& group() const { return *G_; }
    std::uint32_t num_classes() const { return static_cast<std::uint32_t>(rep_g_.size()); }

    std::uint32_t class_of(std::uint32_t g, std::uint32_t h) const;
    std::pair<std::uint32_t, std::uint32_t> rep(std::uint32_t cls) const {
        return {rep_g_[cls], rep_h_[cls]};
    }
    bool generating(std::uint32_t cls) const { return generating_[cls] != 0; }
    /// Conjugacy class id of the commutator [g, h] = g h g^-1 h^-1.
    std::uint32_t higman(std::uint32_t cls) const { return higman_[cls]; }

    const std::vector<std::uint32_t>& generating_classes() const { return gen_classes_; }

    // The Out^+ generators acting on classes (phi -> phi o gamma).
    std::uint32_t gamma0(std::uint32_t cls) const;      // (g, h) -> (g h^-1, g)
    std::uint32_t gamma1728(std::uint32_t cls) const;   // (g, h) -> (h^-1, g)
    std::uint32_t gamma_inf(std::uint32_t cls) const;   // (g, h) -> (g, g h)
    std::uint32_t gamma_minus_i(std::uint32_t cls) const;  // (g, h) -> (g^-1, h^-1)

private:
    const groups::FiniteGroup* G_;
    std::vector<std::uint32_t> offset_;               // per conjugacy class of g
    std::vector<std::vector<std::uint32_t>> horb_;    // per class: orbit id of each h
    std::vector<std::uint32_t> rep_g_, rep_h_;
    std::vector<std::uint8_t> generating_;
    std::vector<std::uint32_t> higman_;
    std::vector<std::uint32_t> gen_classes_;
};

struct GenPairClass {
    std::uint32_t g = 0, h = 0;  // canonical representative
    std::uint32_t class_index = 0;
    std::uint32_t higman_class = 0;
};

/// One class per Inn(G)-orbit of generating pairs; empty when G is not
/// 2-generated.
std::vector<GenPairClass> enumerate_classes(const groups::FiniteGroup& G);

std::uint32_t higman_invariant(const groups::FiniteGroup& G, std::uint32_t g, std::uint32_t h);

struct NielsenOrbitReport {
    struct Orbit {
        std::uint64_t size = 0;            // classes in the Out^+ orbit
        std::uint64_t quotient_size = 0;   // after the gamma_{-I} quotient
        bool gamma_minus_i_free = false;   // involution acts freely on the orbit
    };
    struct Stratum {
        std::uint32_t higman_class = 0;
        std::uint64_t higman_order = 0;    // ord(c)
        std::vector<Orbit> orbits;
        std::uint64_t m_prime = 0, d_prime = 0, modulus = 1;
        bool congruence_pass = true;       // modulus | every quotient size
    };
    std::vector<Stratum> strata;
    std::uint64_t total_classes = 0;
};

NielsenOrbitReport out_plus_orbits(const groups::FiniteGroup& G);

struct CongruenceVerdict {
    std::uint64_t orbit_quotient_size = 0;
    std::uint64_t modulus = 1;
    bool passed = true;
    // Optional ell-power form for simple groups (Vdovin-style);
    // ell_modulus = 1 when not applicable.
    std::uint64_t ell = 0, ell_modulus = 1;
    bool ell_passed = true;
};

/// Machine verdicts for the combinatorial congruence on one Higman class;
/// throws when the class is not admissible for G.
std::vector<CongruenceVerdict> verify_combinatorial_congruence(const groups::FiniteGroup& G,
                                                               std::uint32_t higman_class);

struct Sl2Crosscheck {
    std::uint32_t p = 0;
    std::uint64_t star_points = 0;
    std::uint64_t gl2_classes = 0;
    bool bijection_ok = false;        // fiber over every star point is one GL2-orbit
    bool intertwine_ok = false;       // gamma_inf on pairs matches Rot1 on triples
    bool orbit_multisets_ok = false;  // gamma_inf vs Rot1 orbit size multisets
    bool lift_surjective = false;     // every triple with T != 2 lifts
    bool ok() const { return bijection_ok && intertwine_ok && orbit_multisets_ok && lift_surjective; }
};

/// Element-by-element verification of the trace-coordinate bijection between
/// GL2(F_p)-classes of trace -2 generating pairs and the star points, and of
/// the gamma_inf / Rot1 intertwining.  Desk scale: p in {3,5,7,11,13}.
Sl2Crosscheck sl2_crosscheck(std::uint32_t p);

/// A pair of SL2(F_p) matrices with the given trace triple, when one exists
/// (always, for T(triple) != 2).  Randomized search with exhaustive fallback.
struct MatPair {
    groups::Mat2 g, h;
};
MatPair lift_triple(std::uint32_t p, std::uint32_t x, std::uint32_t y, std::uint32_t z);

}  // namespace markoff::nielsen

#endif
