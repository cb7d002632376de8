#include "markoff/action.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

#include "markoff/arith.hpp"

namespace markoff::action {

using arith::PrimeField;
using surface::PointTable;
using surface::SurfacePoint;

const char* gen_name(Gen g) {
    switch (g) {
        case Gen::R1: return "R1";
        case Gen::R2: return "R2";
        case Gen::R3: return "R3";
        case Gen::Swap12: return "Swap12";
        case Gen::Swap23: return "Swap23";
        case Gen::Swap13: return "Swap13";
        case Gen::Rot1: return "Rot1";
        case Gen::Rot2: return "Rot2";
        case Gen::Rot3: return "Rot3";
        case Gen::Gamma0: return "Gamma0";
        case Gen::Gamma1728: return "Gamma1728";
        case Gen::GammaInf: return "GammaInf";
        case Gen::GammaMinusI: return "GammaMinusI";
    }
    return "?";
}

SurfacePoint apply(Gen g, const SurfacePoint& P, const PrimeField& F) {
    auto [x, y, z] = P;
    switch (g) {
        case Gen::R1: return {F.sub(F.mul(y, z), x), y, z};
        case Gen::R2: return {x, F.sub(F.mul(x, z), y), z};
        case Gen::R3: return {x, y, F.sub(F.mul(x, y), z)};
        case Gen::Swap12: return {y, x, z};
        case Gen::Swap23: return {x, z, y};
        case Gen::Swap13: return {z, y, x};
        case Gen::Rot1: return {x, z, F.sub(F.mul(x, z), y)};
        case Gen::Rot2: return {z, y, F.sub(F.mul(y, z), x)};
        case Gen::Rot3: return {y, F.sub(F.mul(y, z), x), z};
        case Gen::Gamma0:
            // (x, y, z) -> (xy - z, x, x^2 y - x z - y)
            return {F.sub(F.mul(x, y), z), x,
                    F.sub(F.sub(F.mul(F.mul(x, x), y), F.mul(x, z)), y)};
        case Gen::Gamma1728: return {y, x, F.sub(F.mul(x, y), z)};
        case Gen::GammaInf: return {x, z, F.sub(F.mul(x, z), y)};
        case Gen::GammaMinusI: return P;
    }
    throw std::logic_error("apply: unknown generator");
}

SurfacePoint apply(const MoveWord& w, const SurfacePoint& P, const PrimeField& F) {
    SurfacePoint Q = P;
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) Q = apply(*it, Q, F);
    return Q;
}

std::string OrbitDecomposition::generator_set_id() const {
    std::string id;
    for (Gen g : gens) {
        if (!id.empty()) id += '+';
        id += gen_name(g);
    }
    if (restricted == Restrict::Star) id += "/star";
    return id;
}

OrbitDecomposition orbit_decompose(const PointTable& table, std::span<const Gen> gens,
                                   Restrict restrict) {
    const PrimeField& F = table.field();
    const std::size_t n = table.size();
    auto in_subset = [&](std::size_t i) { return restrict == Restrict::All || table.is_star(i); };

    OrbitDecomposition dec;
    dec.gens.assign(gens.begin(), gens.end());
    dec.restricted = restrict;
    dec.orbit_id.assign(n, OrbitDecomposition::kNone);

    std::vector<std::uint64_t> stack;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!in_subset(seed) || dec.orbit_id[seed] != OrbitDecomposition::kNone) continue;
        std::uint32_t id = static_cast<std::uint32_t>(dec.orbits.size());
        std::uint64_t size = 0;
        dec.orbit_id[seed] = id;
        stack.push_back(seed);
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            ++size;
            SurfacePoint P = table.point_at(i);
            for (Gen g : gens) {
                SurfacePoint Q = apply(g, P, F);
                auto j = table.index_of(Q);
                if (!j) throw std::runtime_error("orbit_decompose: generator left the surface");
                if (!in_subset(*j))
                    throw std::runtime_error("orbit_decompose: generator escaped the subset");
                if (dec.orbit_id[*j] == OrbitDecomposition::kNone) {
                    dec.orbit_id[*j] = id;
                    stack.push_back(*j);
                }
            }
        }
        // The seed is the least unvisited index, hence the orbit's minimum.
        dec.orbits.push_back({table.keys()[seed], size});
    }
    return dec;
}

std::vector<std::uint64_t> rot_orbits_on_fiber(std::uint32_t p, std::int64_t t, std::uint32_t a) {
    PrimeField F(p);
    if (p < 3) throw std::invalid_argument("rot_orbits_on_fiber: p >= 3 required");
    std::uint32_t tr = F.reduce(t);
    if (tr == 2 % p) throw std::invalid_argument("rot_orbits_on_fiber: t = 2 excluded");
    a %= p;
    surface::ConicFiber fib = surface::conic_fiber(p, t, a);
    std::uint64_t expected = arith::n_of_trace(a, F);

    auto pack = [&](std::uint32_t y, std::uint32_t z) { return std::uint64_t(y) * p + z; };
    std::vector<std::uint64_t> keys;
    keys.reserve(fib.points.size());
    std::vector<std::uint8_t> star;
    for (std::size_t i = 0; i < fib.points.size(); ++i) {
        keys.push_back(pack(fib.points[i].first, fib.points[i].second));
        star.push_back(fib.is_star(i, tr));
    }
    std::vector<std::uint8_t> seen(keys.size(), 0);
    std::vector<std::uint64_t> sizes;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (seen[i] || !star[i]) continue;
        // rot1 fixes a and maps (y, z) -> (z, az - y).
        std::uint64_t len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            ++len;
            auto [y, z] = fib.points[j];
            std::uint64_t nk = pack(z, F.sub(F.mul(a, z), y));
            auto it = std::lower_bound(keys.begin(), keys.end(), nk);
            if (it == keys.end() || *it != nk)
                throw std::runtime_error("rot_orbits_on_fiber: rot1 left the conic");
            j = static_cast<std::size_t>(it - keys.begin());
            if (!star[j]) throw std::runtime_error("rot_orbits_on_fiber: rot1 escaped the star subset");
        }
        if (len != expected)
            throw std::runtime_error("rot_orbits_on_fiber: orbit size differs from n_p(a)");
        sizes.push_back(len);
    }
    return sizes;
}

PermutationInfo permutation_of(Gen g, const PointTable& table, Restrict restrict) {
    const PrimeField& F = table.field();
    const std::size_t n = table.size();
    auto in_subset = [&](std::size_t i) { return restrict == Restrict::All || table.is_star(i); };

    std::vector<std::uint32_t> pos(n, UINT32_MAX);
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_subset(i)) {
            pos[i] = static_cast<std::uint32_t>(subset.size());
            subset.push_back(i);
        }
    }
    PermutationInfo info;
    info.images.resize(subset.size());
    for (std::size_t s = 0; s < subset.size(); ++s) {
        SurfacePoint P = table.point_at(subset[s]);
        auto j = table.index_of(apply(g, P, F));
        if (!j || !in_subset(*j)) throw std::runtime_error("permutation_of: subset not preserved");
        info.images[s] = pos[*j];
    }
    // Parity from the cycle decomposition: sign = (-1)^(n - #cycles).
    std::vector<std::uint8_t> seen(info.images.size(), 0);
    std::size_t cycles = 0;
    for (std::size_t s = 0; s < info.images.size(); ++s) {
        if (seen[s]) continue;
        ++cycles;
        std::size_t j = s;
        while (!seen[j]) {
            seen[j] = 1;
            j = info.images[j];
        }
    }
    info.even = ((info.images.size() - cycles) % 2 == 0);
    return info;
}

std::span<const Gen> default_gens() {
    static constexpr std::array<Gen, 3> gens{Gen::R3, Gen::Swap12, Gen::Swap23};
    return gens;
}

std::span<const Gen> gamma_gens() {
    static constexpr std::array<Gen, 3> gens{Gen::Gamma0, Gen::Gamma1728, Gen::GammaInf};
    return gens;
}

}  // namespace markoff::action
