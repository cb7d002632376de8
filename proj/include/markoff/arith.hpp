#ifndef MARKOFF_ARITH_HPP
#define MARKOFF_ARITH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace markoff::arith {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Deterministic Miller-Rabin, valid for all n < 3.3e24.
bool is_prime(std::uint64_t n);

/// Trial division with a 2-3-5 wheel. Returns (prime, exponent) pairs in
/// increasing prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// max k with ell^k | n.  ell must be prime, n >= 1.
int l_valuation(std::uint64_t ell, std::uint64_t n);

/// Phi(n) = sum_{d | n} phi(d)/d, exact.
Rational phi_capital(std::uint64_t n);

/// The field F_p.  p must be prime and <= 2^31 so that products of reduced
/// residues fit in 64-bit intermediates.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t a) const {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + std::uint64_t(p_) - b);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;  // a != 0

    /// Euler-criterion value in {-1, 0, +1}.  Requires p odd.
    int legendre(std::uint32_t a) const;

    /// Tonelli-Shanks; nullopt when a is a nonsquare.  Requires p odd.
    std::optional<std::uint32_t> sqrt(std::uint32_t a) const;

    /// Least positive quadratic nonresidue.  Requires p odd.
    std::uint32_t least_nonresidue() const;

private:
    std::uint32_t p_;
};

/// F_{p^2} = F_p(sqrt(d)) with d the least positive nonresidue mod p.
/// Elements are a + b*sqrt(d).  Requires p odd.
class QuadExt {
public:
    struct Elem {
        std::uint32_t a = 0, b = 0;
        bool operator==(const Elem&) const = default;
    };

    explicit QuadExt(PrimeField base);

    const PrimeField& base() const { return F_; }
    std::uint32_t d() const { return d_; }

    Elem one() const { return {1, 0}; }
    Elem from_base(std::uint32_t a) const { return {a, 0}; }
    bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }

    Elem add(const Elem& x, const Elem& y) const { return {F_.add(x.a, y.a), F_.add(x.b, y.b)}; }
    Elem mul(const Elem& x, const Elem& y) const {
        // (a + b s)(a' + b' s) = (aa' + bb' d) + (ab' + a'b) s
        return {F_.add(F_.mul(x.a, y.a), F_.mul(F_.mul(x.b, y.b), d_)),
                F_.add(F_.mul(x.a, y.b), F_.mul(x.b, y.a))};
    }
    Elem pow(Elem x, std::uint64_t e) const;
    Elem conj(const Elem& x) const { return {x.a, F_.neg(x.b)}; }
    std::uint32_t norm(const Elem& x) const {
        return F_.sub(F_.mul(x.a, x.a), F_.mul(F_.mul(x.b, x.b), d_));
    }

private:
    PrimeField F_;
    std::uint32_t d_;
};

/// Legendre symbol as a free function; rejects p = 2.
int legendre(std::uint64_t a, std::uint64_t p);

/// Multiplicative order of x in F_p^x.  x != 0.
std::uint64_t element_order(std::uint32_t x, const PrimeField& F);

/// Multiplicative order of x in F_{p^2}^x.  x != 0.
std::uint64_t element_order(const QuadExt::Elem& x, const QuadExt& E);

/// n_p(t): order of any noncentral matrix of trace t in SL2(F_p).
/// p odd: p for t = 2, 2p for t = -2, |omega| with omega + omega^-1 = t
/// otherwise.  For p = 2 only t = 0 is supported (returns 2).
std::uint64_t n_of_trace(std::int64_t t, const PrimeField& F);

}  // namespace markoff::arith

#endif
