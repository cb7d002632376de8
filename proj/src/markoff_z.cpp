#include "markoff/markoff_z.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "markoff/action.hpp"
#include "markoff/surface.hpp"

namespace markoff::markoff_z {

using arith::PrimeField;

bool MarkoffTriple::operator<(const MarkoffTriple& o) const {
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
    return z < o.z;
}

static BigInt coefficient(SurfaceTag tag) { return tag == SurfaceTag::M ? 3 : 1; }

bool on_surface(const MarkoffTriple& t) {
    return t.x * t.x + t.y * t.y + t.z * t.z == coefficient(t.tag) * t.x * t.y * t.z;
}

MarkoffTriple make_triple(BigInt a, BigInt b, BigInt c, SurfaceTag tag) {
    if (a <= 0 || b <= 0 || c <= 0) throw std::invalid_argument("make_triple: positive solutions only");
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    MarkoffTriple t{std::move(a), std::move(b), std::move(c), tag};
    if (!on_surface(t)) throw std::invalid_argument("make_triple: not a solution");
    return t;
}

MarkoffTriple root_of(SurfaceTag tag) {
    return tag == SurfaceTag::M ? MarkoffTriple{1, 1, 1, SurfaceTag::M}
                                : MarkoffTriple{3, 3, 3, SurfaceTag::X};
}

MarkoffTriple xi(const MarkoffTriple& m) {
    if (m.tag != SurfaceTag::M) throw std::invalid_argument("xi: expects an M-triple");
    return make_triple(3 * m.x, 3 * m.y, 3 * m.z, SurfaceTag::X);
}

std::vector<MarkoffTriple> grow_tree(const BigInt& bound, SurfaceTag tag) {
    if (bound < 1) throw std::invalid_argument("grow_tree: bound >= 1");
    const BigInt k = coefficient(tag);
    std::set<MarkoffTriple> seen;
    std::deque<MarkoffTriple> queue;
    MarkoffTriple root = root_of(tag);
    if (root.z <= bound) {
        seen.insert(root);
        queue.push_back(root);
    }
    while (!queue.empty()) {
        MarkoffTriple t = queue.front();
        queue.pop_front();
        const BigInt coords[3] = {t.x, t.y, t.z};
        for (int i = 0; i < 3; ++i) {
            BigInt others[2];
            int w = 0;
            for (int j = 0; j < 3; ++j)
                if (j != i) others[w++] = coords[j];
            BigInt replaced = k * others[0] * others[1] - coords[i];
            if (replaced <= 0) continue;  // only the root's own moves hit 0 or stay
            MarkoffTriple nt = make_triple(others[0], others[1], replaced, tag);
            if (nt.z > bound) continue;
            if (seen.insert(nt).second) queue.push_back(nt);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<DescentStep> descend(const MarkoffTriple& start) {
    if (!on_surface(start)) throw std::invalid_argument("descend: not a solution");
    const BigInt k = coefficient(start.tag);
    const MarkoffTriple root = root_of(start.tag);
    std::vector<DescentStep> path;
    MarkoffTriple cur = start;
    while (!(cur == root)) {
        // Replace the largest coordinate (the last one, by normalization).
        BigInt replaced = k * cur.x * cur.y - cur.z;
        if (replaced <= 0 || replaced >= cur.z)
            throw std::runtime_error("descend: stalled (descent failed)");
        MarkoffTriple next = make_triple(cur.x, cur.y, replaced, cur.tag);
        if (!on_surface(next)) throw std::logic_error("descend: left the surface");
        path.push_back({next});
        cur = next;
    }
    return path;
}

bool mp_condition(std::uint32_t p) {
    if (p % 4 == 1) return true;
    // Order of (3 + sqrt(5))/2 in F_{p^2} at least 32 sqrt(p+1).
    PrimeField F(p);
    std::uint64_t ord;
    std::uint32_t half = F.inv(2);
    if (F.legendre(5 % p) == 1) {
        std::uint32_t s5 = *F.sqrt(5 % p);
        ord = arith::element_order(F.mul(F.add(3 % p, s5), half), F);
    } else {
        arith::QuadExt E(F);
        std::uint32_t b = *F.sqrt(F.mul(5 % p, F.inv(E.d())));
        arith::QuadExt::Elem w{F.mul(3 % p, half), F.mul(b, half)};
        ord = arith::element_order(w, E);
    }
    return double(ord) * double(ord) >= 1024.0 * (double(p) + 1.0);
}

namespace {

// Integral symmetries of the surface: the 6 coordinate permutations and the
// 4 double-sign-change patterns (bit i set = negate coordinate i).
constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
constexpr unsigned kSignPatterns[4] = {0u, 0b110u, 0b101u, 0b011u};

}  // namespace

bool strong_approx_prime(std::uint32_t p) {
    return strong_approx({p});
}

bool strong_approx(const std::vector<std::uint32_t>& primes) {
    if (primes.empty()) throw std::invalid_argument("strong_approx: no primes");
    std::set<std::uint32_t> distinct(primes.begin(), primes.end());
    if (distinct.size() != primes.size())
        throw std::invalid_argument("strong_approx: modulus must be squarefree");
    for (std::uint32_t p : primes) {
        if (!arith::is_prime(p)) throw std::invalid_argument("strong_approx: nonprime factor");
        if (p >= 3000) throw std::invalid_argument("strong_approx: prime outside verified range");
        if (primes.size() > 1 && !mp_condition(p))
            throw std::invalid_argument("strong_approx: factor fails the composite-modulus condition");
    }

    // Per-prime tables of X(F_p) (the trace -2 surface).
    std::vector<surface::PointTable> tables;
    std::vector<PrimeField> fields;
    for (std::uint32_t p : primes) {
        tables.push_back(surface::PointTable::enumerate(p, -2));
        fields.emplace_back(p);
    }
    const std::size_t r = primes.size();
    const bool composite = r > 1;

    // Component index spaces.  For a single prime the target is the whole
    // point set; for composite moduli it is X*(n) (all components away from
    // the origin) plus the all-zero point, the exact image of the integral
    // points.
    std::vector<std::vector<std::size_t>> comp_points(r);  // table indices
    std::vector<std::vector<std::uint32_t>> comp_pos(r);   // table idx -> position
    for (std::size_t i = 0; i < r; ++i) {
        comp_pos[i].assign(tables[i].size(), UINT32_MAX);
        for (std::size_t j = 0; j < tables[i].size(); ++j) {
            surface::SurfacePoint P = tables[i].point_at(j);
            bool zero = (P.x == 0 && P.y == 0 && P.z == 0);
            if (composite && zero) continue;
            comp_pos[i][j] = static_cast<std::uint32_t>(comp_points[i].size());
            comp_points[i].push_back(j);
        }
        if (comp_points[i].empty()) {
            // X*(p) empty (p = 3 in a composite modulus): nothing to cover in
            // this component, so strong approximation degenerates.
            return true;
        }
    }
    std::size_t total = 1;
    std::vector<std::size_t> stride(r);
    for (std::size_t i = 0; i < r; ++i) {
        stride[i] = total;
        total *= comp_points[i].size();
    }

    // Seeds: reductions of the tree triples and their integral symmetry
    // images.  Each symmetry acts on the integral point, so reducing it per
    // prime keeps the CRT components in sync.
    std::vector<MarkoffTriple> tree = grow_tree(BigInt(10000), SurfaceTag::X);
    std::vector<std::uint8_t> covered(total, 0);
    std::vector<std::size_t> stack;
    for (const MarkoffTriple& t : tree) {
        const BigInt* coords[3] = {&t.x, &t.y, &t.z};
        for (const auto& perm : kPerms) {
            for (unsigned signs : kSignPatterns) {
                std::size_t flat = 0;
                bool inside = true;
                for (std::size_t i = 0; i < r && inside; ++i) {
                    const PrimeField& F = fields[i];
                    std::uint32_t c[3];
                    for (int j = 0; j < 3; ++j) {
                        c[j] = static_cast<std::uint32_t>(*coords[perm[j]] % primes[i]);
                        if (signs & (1u << j)) c[j] = F.neg(c[j]);
                    }
                    auto idx = tables[i].index_of({c[0], c[1], c[2]});
                    if (!idx) throw std::logic_error("strong_approx: reduction off the surface");
                    std::uint32_t pos = comp_pos[i][*idx];
                    if (pos == UINT32_MAX)
                        inside = false;
                    else
                        flat += stride[i] * pos;
                }
                if (inside && !covered[flat]) {
                    covered[flat] = 1;
                    stack.push_back(flat);
                }
            }
        }
    }
    if (!composite) {
        // The origin is the reduction of the integral zero solution.
        auto idx = tables[0].index_of({0, 0, 0});
        std::uint32_t pos = comp_pos[0][*idx];
        if (!covered[pos]) covered[pos] = 1;  // fixed by every move, no push needed
    }

    // Close up under the diagonal surface moves: every reachable point is the
    // reduction of an integral point (the moves lift to Z).
    auto component_step = [&](std::size_t i, std::uint32_t pos, action::Gen g) -> std::uint32_t {
        std::size_t tbl = comp_points[i][pos];
        surface::SurfacePoint P = tables[i].point_at(tbl);
        auto j = tables[i].index_of(action::apply(g, P, fields[i]));
        return comp_pos[i][*j];
    };
    while (!stack.empty()) {
        std::size_t flat = stack.back();
        stack.pop_back();
        std::vector<std::uint32_t> pos(r);
        std::size_t rem = flat;
        for (std::size_t i = r; i-- > 0;) {
            pos[i] = static_cast<std::uint32_t>(rem / stride[i]);
            rem %= stride[i];
        }
        for (action::Gen g : action::default_gens()) {
            std::size_t nflat = 0;
            bool inside = true;
            for (std::size_t i = 0; i < r; ++i) {
                std::uint32_t np = component_step(i, pos[i], g);
                if (np == UINT32_MAX) { inside = false; break; }
                nflat += stride[i] * np;
            }
            if (!inside)
                throw std::logic_error("strong_approx: moves left the target set");
            if (!covered[nflat]) {
                covered[nflat] = 1;
                stack.push_back(nflat);
            }
        }
    }

    for (std::size_t i = 0; i < total; ++i)
        if (!covered[i]) return false;
    return true;
}

FrobeniusReport frobenius_residues(std::uint32_t p, const BigInt& bound) {
    if (!arith::is_prime(p) || p % 4 != 3 || p == 3)
        throw std::invalid_argument("frobenius_residues: p = 3 mod 4, p != 3 required");
    PrimeField F(p);
    FrobeniusReport rep;
    rep.p = p;
    rep.histogram.assign(p, 0);
    std::uint32_t two_thirds = F.mul(2 % p, F.inv(3 % p));
    rep.forbidden = {0, two_thirds, F.neg(two_thirds)};
    std::sort(rep.forbidden.begin(), rep.forbidden.end());

    std::set<BigInt> numbers;
    for (const MarkoffTriple& t : grow_tree(bound, SurfaceTag::M)) {
        for (const BigInt* v : {&t.x, &t.y, &t.z})
            if (*v <= bound) numbers.insert(*v);
    }
    rep.numbers_seen = numbers.size();
    for (const BigInt& m : numbers) ++rep.histogram[static_cast<std::uint32_t>(m % p)];
    for (std::uint32_t f : rep.forbidden)
        if (rep.histogram[f] != 0) rep.ok = false;
    return rep;
}

}  // namespace markoff::markoff_z
