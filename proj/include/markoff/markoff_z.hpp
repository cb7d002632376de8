#ifndef MARKOFF_MARKOFF_Z_HPP
#define MARKOFF_MARKOFF_Z_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "markoff/arith.hpp"

namespace markoff::markoff_z {

using arith::BigInt;

/// M: x^2 + y^2 + z^2 = 3xyz;  X: x^2 + y^2 + z^2 = xyz.
/// The scaling (x,y,z) -> (3x,3y,3z) carries M-solutions to X-solutions.
enum class SurfaceTag : std::uint8_t { M, X };

struct MarkoffTriple {
    BigInt x, y, z;  // 0 < x <= y <= z
    SurfaceTag tag = SurfaceTag::M;
    bool operator==(const MarkoffTriple&) const = default;
    bool operator<(const MarkoffTriple& o) const;
};

bool on_surface(const MarkoffTriple& t);
MarkoffTriple make_triple(BigInt a, BigInt b, BigInt c, SurfaceTag tag);
MarkoffTriple root_of(SurfaceTag tag);  // (1,1,1) or (3,3,3)
MarkoffTriple xi(const MarkoffTriple& m);  // M -> X scaling

/// All solutions with z <= bound: closure of the root under the Vieta moves,
/// order-normalized and deduplicated.
std::vector<MarkoffTriple> grow_tree(const BigInt& bound, SurfaceTag tag = SurfaceTag::M);

struct DescentStep {
    MarkoffTriple to;  // state after replacing the largest coordinate
};

/// Markoff descent to the root; every step strictly decreases the largest
/// coordinate (a stall would falsify the transitivity theorem and throws).
/// Each step is replay-verified against the surface equation.
std::vector<DescentStep> descend(const MarkoffTriple& start);

/// Surjectivity of the integral points onto X(Z/p) for a prime p < 3000
/// (the verified-transitive range): reductions of tree triples and their
/// sign/permutation variants, closed up under the surface moves mod p, must
/// cover the full point set.
bool strong_approx_prime(std::uint32_t p);

/// Squarefree modulus n = p_1 ... p_r: same check on the CRT product,
/// against X*(n) together with the origin.  Each prime must be < 3000 and
/// satisfy p = 1 mod 4 or the order test on (3+sqrt(5))/2.
bool strong_approx(const std::vector<std::uint32_t>& primes);

/// The order condition of the composite-modulus transitivity theorem.
bool mp_condition(std::uint32_t p);

struct FrobeniusReport {
    std::uint32_t p = 0;
    std::vector<std::uint64_t> histogram;   // residue -> count of Markoff numbers
    std::vector<std::uint32_t> forbidden;   // {0, 2/3, -2/3} mod p
    std::uint64_t numbers_seen = 0;
    bool ok = true;                         // all forbidden residues absent
};

/// Histogram of the Markoff numbers <= bound modulo p (p = 3 mod 4, p != 3);
/// the three Frobenius-forbidden residues must have count zero.
FrobeniusReport frobenius_residues(std::uint32_t p, const BigInt& bound);

}  // namespace markoff::markoff_z

#endif
