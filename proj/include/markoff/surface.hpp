#ifndef MARKOFF_SURFACE_HPP
#define MARKOFF_SURFACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "markoff/arith.hpp"

namespace markoff::surface {

struct SurfacePoint {
    std::uint32_t x = 0, y = 0, z = 0;
    bool operator==(const SurfacePoint&) const = default;
};

enum class PointClass { StarPoint, DihedralType, ReducibleTrace };

enum class ConicType { Parabolic, Hyperbolic, Elliptic, EvenSpecial };

/// The F_p-points of x^2 + y^2 + z^2 - xyz - 2 = t, as a sorted array of
/// packed keys x + p*y + p^2*z.  Immutable after construction; the sorted
/// order defines canonical orbit representatives downstream.
class PointTable {
public:
    /// O(p^2) enumeration: for each (x, y) solve the quadratic in z
    /// (exhaustive z-scan for p = 2).  Multi-threaded enumeration partitions
    /// the x-range; the final sort makes the result identical to the
    /// sequential one.
    static PointTable enumerate(std::uint32_t p, std::int64_t t, unsigned threads = 1);

    /// Reassemble from cached keys; validates every key lies on the surface.
    static PointTable from_keys(std::uint32_t p, std::int64_t t, std::vector<std::uint64_t> keys);

    std::uint32_t p() const { return F_.p(); }
    const arith::PrimeField& field() const { return F_; }
    /// Trace invariant as a canonical residue in [0, p).
    std::uint32_t t() const { return t_; }

    std::size_t size() const { return keys_.size(); }
    const std::vector<std::uint64_t>& keys() const { return keys_; }

    std::uint64_t pack(const SurfacePoint& P) const {
        return P.x + std::uint64_t(p()) * P.y + std::uint64_t(p()) * p() * P.z;
    }
    SurfacePoint unpack(std::uint64_t key) const {
        std::uint32_t q = p();
        return {static_cast<std::uint32_t>(key % q), static_cast<std::uint32_t>(key / q % q),
                static_cast<std::uint32_t>(key / q / q)};
    }

    /// Binary search; nullopt when P is not on the surface.
    std::optional<std::size_t> index_of(const SurfacePoint& P) const;
    SurfacePoint point_at(std::size_t i) const { return unpack(keys_[i]); }

    bool is_star(std::size_t i) const { return star_[i] != 0; }
    std::size_t star_size() const { return star_count_; }

    bool on_surface(const SurfacePoint& P) const;

private:
    PointTable(arith::PrimeField F, std::uint32_t t) : F_(F), t_(t) {}
    void finalize();

    arith::PrimeField F_;
    std::uint32_t t_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint8_t> star_;
    std::size_t star_count_ = 0;
};

/// ReducibleTrace iff t = 2; DihedralType iff at least two coordinates
/// vanish; StarPoint otherwise.  Throws if P is not on X_t.
PointClass classify_point(const SurfacePoint& P, std::uint32_t p, std::int64_t t);

/// |X*_{-2}(p)| by the closed form p(p+3) / p(p-3) for p = 1 / 3 mod 4,
/// cross-checked against enumeration (mismatch throws).  p >= 3.
std::uint64_t star_count(std::uint32_t p);

/// The conic C_1(a)_t = { (a, y, z) : y^2 + z^2 - ayz + (a^2 - 2 - t) = 0 }.
struct ConicFiber {
    std::uint32_t a = 0;
    ConicType type = ConicType::Parabolic;
    bool degenerate = false;  // a^2 = t + 2
    std::vector<std::pair<std::uint32_t, std::uint32_t>> points;  // (y, z)
    std::size_t star_size = 0;

    bool is_star(std::size_t i, std::uint32_t t_reduced) const;
};
ConicFiber conic_fiber(std::uint32_t p, std::int64_t t, std::uint32_t a);

}  // namespace markoff::surface

#endif
