#ifndef SUPERCONG_MODP2_HPP
#define SUPERCONG_MODP2_HPP

// Exact arithmetic modulo p and p^2: valuation-tracked products, modular
// inverses, Jacobi symbols, and square roots lifted from mod p to mod p^2.

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace supercong {

struct NotInvertible : std::domain_error {
    explicit NotInvertible(const std::string& what) : std::domain_error(what) {}
};

struct DegenerateRoot : std::domain_error {
    explicit DegenerateRoot(const std::string& what) : std::domain_error(what) {}
};

struct BadBase : std::domain_error {
    explicit BadBase(const std::string& what) : std::domain_error(what) {}
};

// Residue in [0, p^2); closed under +, -, * and division by units.
using Residue2 = std::uint64_t;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a += b;  // no overflow: operands < m < 2^63
    return a >= m ? a - m : a;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Modular inverse by extended Euclid. Requires m < 2^63.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m);
    std::int64_t nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw NotInvertible("inv_mod: argument shares a factor with the modulus");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

// Deterministic Miller-Rabin; the base set is valid for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    std::vector<bool> sieve(hi + 1, true);
    sieve[0] = sieve[1] = false;
    for (std::uint64_t i = 2; i * i <= hi; ++i)
        if (sieve[i])
            for (std::uint64_t j = i * i; j <= hi; j += i) sieve[j] = false;
    for (std::uint64_t i = lo < 2 ? 2 : lo; i <= hi; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

// Jacobi symbol (a/n) for odd n >= 1; total function, 0 when gcd(a,n) > 1.
inline int jacobi(std::int64_t a, std::uint64_t n) {
    assert(n % 2 == 1);
    int sign = 1;
    std::uint64_t x;
    if (a < 0) {
        x = (static_cast<std::uint64_t>(-(a + 1)) + 1) % n;
        if (n % 4 == 3) sign = -sign;
    } else {
        x = static_cast<std::uint64_t>(a) % n;
    }
    std::uint64_t y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            std::uint64_t y8 = y % 8;
            if (y8 == 3 || y8 == 5) sign = -sign;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) sign = -sign;
        x %= y;
    }
    return y == 1 ? sign : 0;
}

// Immutable per-prime state. All operations on it are pure; contexts can be
// shared freely across threads.
struct PrimeContext {
    std::uint64_t p = 0;
    std::uint64_t p2 = 0;
    // inv_small[i] = i^{-1} mod p^2 for 1 <= i <= 3p+4 with p∤i (0 otherwise).
    // Covers every divisor the binomial-product generators produce.
    std::vector<std::uint64_t> inv_small;

    explicit PrimeContext(std::uint64_t prime, bool small_inverse_cache = true) : p(prime) {
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw std::invalid_argument("PrimeContext: modulus must be an odd prime >= 3");
        if (p > 3037000499ull)  // keep p^2 < 2^63 so signed egcd stays exact
            throw std::invalid_argument("PrimeContext: prime too large (p^2 must fit in 63 bits)");
        p2 = p * p;
        if (small_inverse_cache) build_inverse_cache();
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, p2); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return addmod(a, b, p2); }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return submod(a, b, p2); }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p2 - a; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p2); }

    // Signed integer folded into [0, p^2).
    std::uint64_t reduce_int(std::int64_t n) const {
        if (n >= 0) return static_cast<std::uint64_t>(n) % p2;
        std::uint64_t mag = (static_cast<std::uint64_t>(-(n + 1)) + 1) % p2;
        return mag == 0 ? 0 : p2 - mag;
    }

    // Inverse mod p^2; throws NotInvertible when p | a.
    std::uint64_t inv(std::uint64_t a) const {
        a %= p2;
        if (a % p == 0) throw NotInvertible("inv: p divides argument");
        if (a < inv_small.size()) {
            std::uint64_t e = inv_small[a];
            assert(e != 0);
            return e;
        }
        return inv_mod(a, p2);
    }

  private:
    void build_inverse_cache() {
        std::uint64_t n = 3 * p + 5;
        inv_small.assign(n, 0);
        if (n > 1) inv_small[1] = 1;
        for (std::uint64_t i = 2; i < n; ++i) {
            if (i % p == 0) continue;
            if (i >= p2) {
                inv_small[i] = inv_small[i % p2];
                continue;
            }
            // inv[i] = -(p2/i) * inv[p2 mod i]; the referenced index is
            // always < i and coprime to p for i in this range.
            inv_small[i] = p2 - mulmod(p2 / i, inv_small[p2 % i], p2);
        }
    }
};

// Square root mod p by Tonelli-Shanks. Precondition: jacobi(a, p) = 1.
inline std::uint64_t sqrt_mod_p(std::uint64_t a, const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p;
    a %= p;
    assert(a != 0);
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (jacobi(static_cast<std::int64_t>(z), p) != -1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t t2 = t;
        std::uint64_t i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = powmod(c, std::uint64_t{1} << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// Square root of a unit mod p^2 (Tonelli-Shanks mod p, one Hensel step).
// Returns nullopt when a is a non-residue; throws DegenerateRoot when p | a,
// where lifting is ambiguous and callers must branch before calling.
inline std::optional<Residue2> sqrt_mod_p2(Residue2 a, const PrimeContext& ctx) {
    a %= ctx.p2;
    if (a % ctx.p == 0) throw DegenerateRoot("sqrt_mod_p2: argument divisible by p");
    if (jacobi(static_cast<std::int64_t>(a % ctx.p), ctx.p) != 1) return std::nullopt;
    std::uint64_t r = sqrt_mod_p(a % ctx.p, ctx);
    std::uint64_t f = ctx.sub(ctx.mul(r, r), a);
    std::uint64_t corr = ctx.mul(f, ctx.inv(ctx.mul(2, r)));
    r = ctx.sub(r, corr);
    assert(ctx.mul(r, r) == a);
    return r;
}

// A residue mod p^2 factored as unit * p^val with p ∤ unit. The distinguished
// zero element is {unit = 0, val = 0}. Supports *, / and conversion to
// Residue2 only; sums are accumulated in Residue2 after conversion.
struct PadicScaled {
    std::uint64_t unit = 0;
    std::uint32_t val = 0;

    bool is_zero() const { return unit == 0; }
    friend bool operator==(const PadicScaled& a, const PadicScaled& b) = default;
};

// Signed integer -> (unit, valuation); n = 0 yields the zero element.
inline PadicScaled padic_of_int(std::int64_t n, const PrimeContext& ctx) {
    if (n == 0) return {};
    bool negative = n < 0;
    std::uint64_t u = negative ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    std::uint32_t v = 0;
    while (u % ctx.p == 0) {
        u /= ctx.p;
        ++v;
    }
    u %= ctx.p2;
    if (negative) u = ctx.p2 - u;
    return {u, v};
}

inline Residue2 padic_to_residue(const PadicScaled& x, const PrimeContext& ctx) {
    if (x.is_zero() || x.val >= 2) return 0;
    return x.val == 1 ? ctx.mul(x.unit, ctx.p) : x.unit;
}

inline PadicScaled padic_mul(const PadicScaled& a, const PadicScaled& b, const PrimeContext& ctx) {
    if (a.is_zero() || b.is_zero()) return {};
    return {ctx.mul(a.unit, b.unit), a.val + b.val};
}

inline PadicScaled padic_div(const PadicScaled& a, const PadicScaled& b, const PrimeContext& ctx) {
    assert(!b.is_zero());
    if (a.is_zero()) return {};
    assert(a.val >= b.val);
    return {ctx.mul(a.unit, ctx.inv(b.unit)), a.val - b.val};
}

inline PadicScaled padic_mul_int(const PadicScaled& a, std::int64_t n, const PrimeContext& ctx) {
    return padic_mul(a, padic_of_int(n, ctx), ctx);
}

inline PadicScaled padic_div_int(const PadicScaled& a, std::int64_t n, const PrimeContext& ctx) {
    return padic_div(a, padic_of_int(n, ctx), ctx);
}

}  // namespace supercong

#endif  // SUPERCONG_MODP2_HPP
