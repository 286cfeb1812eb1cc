#ifndef SUPERCONG_BINOMSUMS_HPP
#define SUPERCONG_BINOMSUMS_HPP

// The six central-binomial product families and their sums mod p^2:
//   F1 = C(2k,k)C(3k,k)          F2 = C(2k,k)C(4k,2k)       F3 = C(3k,k)C(6k,3k)
//   F4 = C(2k,k)^2 C(3k,k)       F5 = C(2k,k)^2 C(4k,2k)    F6 = C(2k,k)C(3k,k)C(6k,3k)
// Terms are generated incrementally (O(1) work per k) via the integer ratios
// of the four central binomials, tracked as (unit, valuation) pairs.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "supercong/modp2.hpp"

namespace supercong::binomsums {

enum class SumFamily : int { F1 = 1, F2 = 2, F3 = 3, F4 = 4, F5 = 5, F6 = 6 };

inline constexpr std::array<SumFamily, 6> kAllFamilies{SumFamily::F1, SumFamily::F2, SumFamily::F3,
                                                       SumFamily::F4, SumFamily::F5, SumFamily::F6};

inline int family_index(SumFamily f) { return static_cast<int>(f); }

// Above k = p / divisor every term of the family is divisible by p.
inline int truncation_divisor(SumFamily f) {
    switch (f) {
        case SumFamily::F1:
        case SumFamily::F4: return 3;
        case SumFamily::F2:
        case SumFamily::F5: return 4;
        case SumFamily::F3:
        case SumFamily::F6: return 6;
    }
    return 0;
}

inline std::uint64_t truncation_bound(SumFamily f, std::uint64_t p) {
    return p / static_cast<std::uint64_t>(truncation_divisor(f));
}

// The single-product core whose vanishing drives the family's truncation.
inline SumFamily core_family(SumFamily f) {
    switch (f) {
        case SumFamily::F4: return SumFamily::F1;
        case SumFamily::F5: return SumFamily::F2;
        case SumFamily::F6: return SumFamily::F3;
        default: return f;
    }
}

// Exact rational base; den > 0, reduced.
struct Rational64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational64 make(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("Rational64: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return {num, den};
    }

    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
    friend bool operator==(const Rational64&, const Rational64&) = default;
};

// 1/m as a unit mod p^2; BadBase when p divides numerator or denominator.
inline Residue2 base_inverse(Rational64 m, const PrimeContext& ctx) {
    if (m.num == 0 || m.num % static_cast<std::int64_t>(ctx.p) == 0)
        throw BadBase("base " + m.str() + ": numerator divisible by p=" + std::to_string(ctx.p));
    if (m.den % static_cast<std::int64_t>(ctx.p) == 0)
        throw BadBase("base " + m.str() + ": denominator divisible by p=" + std::to_string(ctx.p));
    return ctx.mul(ctx.reduce_int(m.den), ctx.inv(ctx.reduce_int(m.num)));
}

// Tracks C(2k,k), C(3k,k), C(4k,2k), C(6k,3k) as PadicScaled values and
// advances all four in O(1) multiplications per step. Single-owner state;
// run one generator per thread.
class CentralProductGenerator {
  public:
    explicit CentralProductGenerator(const PrimeContext& ctx)
        : ctx_(&ctx), b2_{1, 0}, b3_{1, 0}, b4_{1, 0}, b6_{1, 0} {}

    std::uint64_t k() const { return k_; }
    const PadicScaled& binom_2k_k() const { return b2_; }
    const PadicScaled& binom_3k_k() const { return b3_; }
    const PadicScaled& binom_4k_2k() const { return b4_; }
    const PadicScaled& binom_6k_3k() const { return b6_; }

    // k -> k+1 via the term ratios
    //   C(2k,k):   2(2k+1) / (k+1)
    //   C(3k,k):   3(3k+1)(3k+2) / (2(2k+1)(k+1))
    //   C(4k,2k):  2(4k+1)(4k+3) / ((2k+1)(k+1))
    //   C(6k,3k):  8(6k+1)(2k+1)(6k+5) / ((3k+1)(3k+2)(k+1))
    void advance() {
        const auto& c = *ctx_;
        const std::int64_t k = static_cast<std::int64_t>(k_);
        b2_ = padic_mul_int(b2_, 2 * (2 * k + 1), c);
        b2_ = padic_div_int(b2_, k + 1, c);

        b3_ = padic_mul_int(b3_, 3 * (3 * k + 1), c);
        b3_ = padic_mul_int(b3_, 3 * k + 2, c);
        b3_ = padic_div_int(b3_, 2, c);
        b3_ = padic_div_int(b3_, 2 * k + 1, c);
        b3_ = padic_div_int(b3_, k + 1, c);

        b4_ = padic_mul_int(b4_, 2 * (4 * k + 1), c);
        b4_ = padic_mul_int(b4_, 4 * k + 3, c);
        b4_ = padic_div_int(b4_, 2 * k + 1, c);
        b4_ = padic_div_int(b4_, k + 1, c);

        b6_ = padic_mul_int(b6_, 8 * (6 * k + 1), c);
        b6_ = padic_mul_int(b6_, 6 * k + 5, c);
        b6_ = padic_mul_int(b6_, 2 * k + 1, c);
        b6_ = padic_div_int(b6_, 3 * k + 1, c);
        b6_ = padic_div_int(b6_, 3 * k + 2, c);
        b6_ = padic_div_int(b6_, k + 1, c);

        ++k_;
    }

    PadicScaled product(SumFamily f) const {
        const auto& c = *ctx_;
        switch (f) {
            case SumFamily::F1: return padic_mul(b2_, b3_, c);
            case SumFamily::F2: return padic_mul(b2_, b4_, c);
            case SumFamily::F3: return padic_mul(b3_, b6_, c);
            case SumFamily::F4: return padic_mul(padic_mul(b2_, b2_, c), b3_, c);
            case SumFamily::F5: return padic_mul(padic_mul(b2_, b2_, c), b4_, c);
            case SumFamily::F6: return padic_mul(padic_mul(b2_, b3_, c), b6_, c);
        }
        return {};
    }

  private:
    const PrimeContext* ctx_;
    std::uint64_t k_ = 0;
    PadicScaled b2_, b3_, b4_, b6_;
};

// sum_{k=0}^{upper} T_k(family) * t^k mod p^2 for an arbitrary residue t.
inline Residue2 sum_family_at(SumFamily f, Residue2 t, std::uint64_t upper, const PrimeContext& ctx) {
    CentralProductGenerator gen(ctx);
    Residue2 acc = 0;
    Residue2 w = 1;
    for (std::uint64_t k = 0;; ++k) {
        acc = ctx.add(acc, ctx.mul(padic_to_residue(gen.product(f), ctx), w));
        if (k == upper) break;
        w = ctx.mul(w, t);
        gen.advance();
    }
    return acc;
}

// sum_{k=0}^{upper} T_k(family) / m^k mod p^2.
inline Residue2 sum_family(SumFamily f, Rational64 m, std::uint64_t upper, const PrimeContext& ctx) {
    return sum_family_at(f, base_inverse(m, ctx), upper, ctx);
}

// Per-term residues T_k for several families in one generator pass;
// out[i] receives the terms of families[i] for k = 0 .. upper.
inline void family_terms(const std::vector<SumFamily>& families, std::uint64_t upper, const PrimeContext& ctx,
                         std::vector<std::vector<Residue2>>& out) {
    out.resize(families.size());
    for (auto& v : out) {
        v.clear();
        v.reserve(upper + 1);
    }
    CentralProductGenerator gen(ctx);
    for (std::uint64_t k = 0;; ++k) {
        for (std::size_t i = 0; i < families.size(); ++i)
            out[i].push_back(padic_to_residue(gen.product(families[i]), ctx));
        if (k == upper) break;
        gen.advance();
    }
}

struct VanishingOutcome {
    bool ok = true;
    std::string detail;  // first violated condition, empty when ok
};

// Checks the divisibility facts behind the truncation bounds:
//  - the core product is divisible by p for every k in (bound, p);
//  - F4: C(2k,k)C(3k,k) = 0 mod p^2 for 2p/3 <= k < p;
//  - F5: C(2k,k)C(4k,2k) = 0 mod p^2 for k >= 3p/4;
//  - F6: C(3k,k)C(6k,3k)C(3r,r)C(6r,3r) = 0 mod p^2 whenever k + r >= p.
inline VanishingOutcome vanishing_check(SumFamily f, const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p;
    const SumFamily core = core_family(f);
    std::vector<std::uint32_t> vals(p);
    CentralProductGenerator gen(ctx);
    for (std::uint64_t k = 0; k < p; ++k) {
        PadicScaled t = gen.product(core);
        vals[k] = t.is_zero() ? 0 : t.val;
        if (k + 1 < p) gen.advance();
    }
    const std::uint64_t bound = truncation_bound(f, p);
    for (std::uint64_t k = bound + 1; k < p; ++k)
        if (vals[k] < 1)
            return {false, "p does not divide core term at k=" + std::to_string(k)};
    if (f == SumFamily::F4) {
        for (std::uint64_t k = (2 * p + 2) / 3; k < p; ++k)
            if (vals[k] < 2)
                return {false, "F4 core not 0 mod p^2 at k=" + std::to_string(k)};
    } else if (f == SumFamily::F5) {
        for (std::uint64_t k = (3 * p + 3) / 4; k < p; ++k)
            if (vals[k] < 2)
                return {false, "F5 core not 0 mod p^2 at k=" + std::to_string(k)};
    } else if (f == SumFamily::F6) {
        for (std::uint64_t k = 1; k < p; ++k) {
            std::uint64_t r0 = p > k ? p - k : 0;
            for (std::uint64_t r = r0; r < p; ++r)
                if (vals[k] + vals[r] < 2)
                    return {false, "F6 pair (k=" + std::to_string(k) + ",r=" + std::to_string(r) +
                                       ") not 0 mod p^2"};
        }
    }
    return {};
}

}  // namespace supercong::binomsums

#endif  // SUPERCONG_BINOMSUMS_HPP
