#include "markoff/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace markoff::arith {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sufficient witness set for n < 3.3e24 (Sorenson-Webster).
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<std::uint64_t, int>> out;
    auto strip = [&](std::uint64_t q) {
        if (n % q) return;
        int e = 0;
        while (n % q == 0) { n /= q; ++e; }
        out.emplace_back(q, e);
    };
    strip(2);
    strip(3);
    strip(5);
    // 2-3-5 wheel.
    static constexpr int steps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t q = 7;
    int i = 0;
    while (q * q <= n) {
        strip(q);
        q += steps[i];
        i = (i + 1) & 7;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [q, e] : factorize(n)) {
        std::size_t sz = out.size();
        std::uint64_t qe = 1;
        for (int i = 0; i < e; ++i) {
            qe *= q;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * qe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int l_valuation(std::uint64_t ell, std::uint64_t n) {
    if (!is_prime(ell)) throw std::invalid_argument("l_valuation: ell must be prime");
    if (n == 0) throw std::invalid_argument("l_valuation: n must be >= 1");
    int k = 0;
    while (n % ell == 0) { n /= ell; ++k; }
    return k;
}

Rational phi_capital(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("phi_capital: n must be >= 1");
    Rational sum = 0;
    for (std::uint64_t d : divisors(n)) sum += Rational(euler_phi(d), d);
    return sum;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p > (1u << 31)) throw std::invalid_argument("PrimeField: p exceeds 2^31");
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: p is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_, b = a % p_;
    while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("PrimeField::inv: zero");
    return pow(a, p_ - 2);
}

int PrimeField::legendre(std::uint32_t a) const {
    if (p_ == 2) throw std::invalid_argument("legendre: p = 2 not allowed");
    a %= p_;
    if (a == 0) return 0;
    std::uint32_t e = pow(a, (p_ - 1) / 2);
    return e == 1 ? 1 : -1;
}

std::optional<std::uint32_t> PrimeField::sqrt(std::uint32_t a) const {
    if (p_ == 2) return a % 2;
    a %= p_;
    if (a == 0) return 0u;
    if (legendre(a) != 1) return std::nullopt;
    if (p_ % 4 == 3) {
        std::uint32_t r = pow(a, (p_ + 1) / 4);
        return r;
    }
    // Tonelli-Shanks.
    std::uint32_t q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint32_t z = least_nonresidue();
    std::uint32_t m = s;
    std::uint32_t c = pow(z, q);
    std::uint32_t t = pow(a, q);
    std::uint32_t r = pow(a, (q + 1) / 2);
    while (t != 1) {
        std::uint32_t i = 0, tt = t;
        while (tt != 1) { tt = mul(tt, tt); ++i; }
        std::uint32_t b = c;
        for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

std::uint32_t PrimeField::least_nonresidue() const {
    if (p_ == 2) throw std::invalid_argument("least_nonresidue: p = 2");
    for (std::uint32_t d = 2; d < p_; ++d) {
        if (legendre(d) == -1) return d;
    }
    throw std::logic_error("least_nonresidue: none found");
}

QuadExt::QuadExt(PrimeField base) : F_(base), d_(F_.least_nonresidue()) {}

QuadExt::Elem QuadExt::pow(Elem x, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    if (p == 2) throw std::invalid_argument("legendre: p = 2 not allowed");
    PrimeField F(static_cast<std::uint32_t>(p));
    return F.legendre(static_cast<std::uint32_t>(a % p));
}

namespace {

/// Order of x given a multiple N of it: peel primes off N.
template <class Elem, class One, class Pow>
std::uint64_t order_from_multiple(const Elem& x, std::uint64_t N, One is_one, Pow pw) {
    std::uint64_t ord = N;
    for (auto [q, e] : factorize(N)) {
        for (int i = 0; i < e && ord % q == 0; ++i) {
            if (is_one(pw(x, ord / q)))
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

}  // namespace

std::uint64_t element_order(std::uint32_t x, const PrimeField& F) {
    if (x % F.p() == 0) throw std::invalid_argument("element_order: zero element");
    return order_from_multiple(
        x % F.p(), F.p() - 1, [&](std::uint32_t v) { return v == 1; },
        [&](std::uint32_t v, std::uint64_t e) { return F.pow(v, e); });
}

std::uint64_t element_order(const QuadExt::Elem& x, const QuadExt& E) {
    if (E.is_zero(x)) throw std::invalid_argument("element_order: zero element");
    std::uint64_t p = E.base().p();
    return order_from_multiple(
        x, p * p - 1, [&](const QuadExt::Elem& v) { return v == E.one(); },
        [&](const QuadExt::Elem& v, std::uint64_t e) { return E.pow(v, e); });
}

std::uint64_t n_of_trace(std::int64_t t, const PrimeField& F) {
    std::uint32_t p = F.p();
    std::uint32_t tr = F.reduce(t);
    if (p == 2) {
        if (tr == 0) return 2;
        throw std::invalid_argument("n_of_trace: p = 2 supports only t = 0");
    }
    if (tr == 2) return p;
    if (tr == p - 2) return 2ull * p;
    // omega + omega^-1 = t: omega = (t + sqrt(t^2-4)) / 2.
    std::uint32_t disc = F.sub(F.mul(tr, tr), 4 % p);
    std::uint32_t half = F.inv(2);
    if (F.legendre(disc) == 1) {
        std::uint32_t s = *F.sqrt(disc);
        std::uint32_t omega = F.mul(F.add(tr, s), half);
        return element_order(omega, F);
    }
    QuadExt E(F);
    // sqrt(disc) = sqrt(disc/d) * sqrt(d).
    std::uint32_t b = *F.sqrt(F.mul(disc, F.inv(E.d())));
    QuadExt::Elem omega{F.mul(tr, half), F.mul(b, half)};
    // omega has norm 1, so its order divides p+1.
    return order_from_multiple(
        omega, std::uint64_t(p) + 1, [&](const QuadExt::Elem& v) { return v == E.one(); },
        [&](const QuadExt::Elem& v, std::uint64_t e) { return E.pow(v, e); });
}

}  // namespace markoff::arith
