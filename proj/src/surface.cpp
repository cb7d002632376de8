#include "markoff/surface.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace markoff::surface {

using arith::PrimeField;

namespace {

/// T(x,y,z) = x^2 + y^2 + z^2 - xyz - 2.
std::uint32_t trace_invariant(const PrimeField& F, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    std::uint32_t s = F.add(F.add(F.mul(x, x), F.mul(y, y)), F.mul(z, z));
    return F.sub(F.sub(s, F.mul(F.mul(x, y), z)), 2 % F.p());
}

bool star_coords(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    return (x != 0) + (y != 0) + (z != 0) >= 2;
}

/// z-solutions of z^2 - xy z + (x^2 + y^2 - t - 2) = 0 for one (x, y).
void append_row(const PrimeField& F, std::uint32_t t, std::uint32_t x, std::uint32_t y,
                std::vector<std::uint64_t>& keys) {
    std::uint32_t p = F.p();
    auto pack = [&](std::uint32_t z) {
        return x + std::uint64_t(p) * y + std::uint64_t(p) * p * z;
    };
    std::uint32_t c = F.sub(F.add(F.mul(x, x), F.mul(y, y)), F.add(t, 2 % p));
    if (p == 2) {
        for (std::uint32_t z = 0; z < 2; ++z) {
            std::uint32_t v = F.add(F.sub(F.mul(z, z), F.mul(F.mul(x, y), z)), c);
            if (v == 0) keys.push_back(pack(z));
        }
        return;
    }
    std::uint32_t b = F.mul(x, y);
    std::uint32_t disc = F.sub(F.mul(b, b), F.mul(4 % p, c));
    int chi = F.legendre(disc);
    if (chi == -1) return;
    std::uint32_t half = F.inv(2);
    if (chi == 0) {
        keys.push_back(pack(F.mul(b, half)));
        return;
    }
    std::uint32_t s = *F.sqrt(disc);
    keys.push_back(pack(F.mul(F.add(b, s), half)));
    keys.push_back(pack(F.mul(F.sub(b, s), half)));
}

}  // namespace

PointTable PointTable::enumerate(std::uint32_t p, std::int64_t t, unsigned threads) {
    PrimeField F(p);
    if (std::uint64_t(p) * p * p - 1 > UINT64_MAX / 2)
        throw std::invalid_argument("PointTable: p too large to pack keys");
    PointTable tab(F, F.reduce(t));
    if (threads <= 1 || p < 64) {
        for (std::uint32_t x = 0; x < p; ++x)
            for (std::uint32_t y = 0; y < p; ++y) append_row(F, tab.t_, x, y, tab.keys_);
    } else {
        unsigned n = std::min<unsigned>(threads, p);
        std::vector<std::vector<std::uint64_t>> parts(n);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&, w] {
                for (std::uint32_t x = w; x < p; x += n)
                    for (std::uint32_t y = 0; y < p; ++y) append_row(F, tab.t_, x, y, parts[w]);
            });
        }
        for (auto& th : workers) th.join();
        for (auto& part : parts) tab.keys_.insert(tab.keys_.end(), part.begin(), part.end());
    }
    tab.finalize();
    return tab;
}

PointTable PointTable::from_keys(std::uint32_t p, std::int64_t t, std::vector<std::uint64_t> keys) {
    PrimeField F(p);
    PointTable tab(F, F.reduce(t));
    tab.keys_ = std::move(keys);
    for (std::uint64_t k : tab.keys_) {
        SurfacePoint P = tab.unpack(k);
        if (!tab.on_surface(P)) throw std::runtime_error("PointTable: key not on surface");
    }
    tab.finalize();
    return tab;
}

void PointTable::finalize() {
    std::sort(keys_.begin(), keys_.end());
    if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end())
        throw std::logic_error("PointTable: duplicate keys");
    star_.resize(keys_.size());
    star_count_ = 0;
    bool t_is_2 = (t_ == 2 % F_.p());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        SurfacePoint P = unpack(keys_[i]);
        star_[i] = !t_is_2 && star_coords(P.x, P.y, P.z);
        star_count_ += star_[i];
    }
}

std::optional<std::size_t> PointTable::index_of(const SurfacePoint& P) const {
    std::uint64_t key = pack(P);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
}

bool PointTable::on_surface(const SurfacePoint& P) const {
    return P.x < p() && P.y < p() && P.z < p() && trace_invariant(F_, P.x, P.y, P.z) == t_;
}

PointClass classify_point(const SurfacePoint& P, std::uint32_t p, std::int64_t t) {
    PrimeField F(p);
    std::uint32_t tr = F.reduce(t);
    if (trace_invariant(F, P.x, P.y, P.z) != tr)
        throw std::invalid_argument("classify_point: P not on X_t");
    if (tr == 2 % p) return PointClass::ReducibleTrace;
    if (!star_coords(P.x, P.y, P.z)) return PointClass::DihedralType;
    return PointClass::StarPoint;
}

std::uint64_t star_count(std::uint32_t p) {
    if (p < 3) throw std::invalid_argument("star_count: p >= 3 required");
    std::uint64_t formula = (p % 4 == 1) ? std::uint64_t(p) * (p + 3) : std::uint64_t(p) * (p - 3);
    PointTable tab = PointTable::enumerate(p, -2);
    if (tab.star_size() != formula)
        throw std::runtime_error("star_count: closed form disagrees with enumeration");
    return formula;
}

bool ConicFiber::is_star(std::size_t i, std::uint32_t) const {
    auto [y, z] = points[i];
    return star_coords(a, y, z);
}

ConicFiber conic_fiber(std::uint32_t p, std::int64_t t, std::uint32_t a) {
    PrimeField F(p);
    std::uint32_t tr = F.reduce(t);
    a %= p;
    ConicFiber fib;
    fib.a = a;
    std::uint32_t a2 = F.mul(a, a);
    if (p == 2) {
        fib.type = ConicType::EvenSpecial;
        fib.degenerate = (a2 == F.add(tr, 0));  // t + 2 = t mod 2
    } else {
        std::uint32_t disc = F.sub(a2, 4 % p);
        int chi = F.legendre(disc);
        fib.type = chi == 0 ? ConicType::Parabolic : (chi == 1 ? ConicType::Hyperbolic : ConicType::Elliptic);
        fib.degenerate = (a2 == F.add(tr, 2 % p));
    }
    // y^2 + z^2 - a y z + (a^2 - 2 - t) = 0: solve the quadratic in z per y.
    for (std::uint32_t y = 0; y < p; ++y) {
        std::uint32_t c = F.add(F.mul(y, y), F.sub(a2, F.add(tr, 2 % p)));
        std::uint32_t b = F.mul(a, y);  // z^2 - (a y) z + c = 0
        if (p == 2) {
            for (std::uint32_t z = 0; z < 2; ++z) {
                if (F.add(F.sub(F.mul(z, z), F.mul(b, z)), c) == 0) fib.points.emplace_back(y, z);
            }
            continue;
        }
        std::uint32_t disc = F.sub(F.mul(b, b), F.mul(4 % p, c));
        int chi = F.legendre(disc);
        if (chi == -1) continue;
        std::uint32_t half = F.inv(2);
        if (chi == 0) {
            fib.points.emplace_back(y, F.mul(b, half));
        } else {
            std::uint32_t s = *F.sqrt(disc);
            fib.points.emplace_back(y, F.mul(F.add(b, s), half));
            fib.points.emplace_back(y, F.mul(F.sub(b, s), half));
        }
    }
    std::sort(fib.points.begin(), fib.points.end());
    bool t_is_2 = (tr == 2 % p);
    for (std::size_t i = 0; i < fib.points.size(); ++i) {
        auto [y, z] = fib.points[i];
        if (!t_is_2 && star_coords(a, y, z)) ++fib.star_size;
    }
    return fib;
}

}  // namespace markoff::surface
