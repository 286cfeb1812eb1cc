#ifndef SUPERCONG_QUADFORM_HPP
#define SUPERCONG_QUADFORM_HPP

// Binary quadratic form representations of p (or 4p) by Cornacchia's
// algorithm, with the sign normalizations the congruence closed forms use:
//   p = a^2 + b^2,  p = A^2 + 3B^2,  p = c^2 + 2d^2,
//   4p = L^2 + 27M^2,  4p = x^2 + 19y^2.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "supercong/modp2.hpp"

namespace supercong::quadform {

struct NormalizationImpossible : std::logic_error {
    explicit NormalizationImpossible(const std::string& what) : std::logic_error(what) {}
};

struct FormDescriptor {
    int d = 1;      // coefficient in x^2 + d*y^2
    int scale = 1;  // 1: represent p, 4: represent 4p

    friend bool operator==(const FormDescriptor&, const FormDescriptor&) = default;
};

inline constexpr FormDescriptor kFormSquares{1, 1};      // p = a^2 + b^2
inline constexpr FormDescriptor kFormTwice{2, 1};        // p = c^2 + 2d^2
inline constexpr FormDescriptor kFormThrice{3, 1};       // p = A^2 + 3B^2
inline constexpr FormDescriptor kForm19{19, 4};          // 4p = x^2 + 19y^2
inline constexpr FormDescriptor kForm27{27, 4};          // 4p = L^2 + 27M^2

struct QuadRep {
    std::int64_t x = 0;
    std::int64_t y = 0;
    FormDescriptor form;
    std::uint64_t p = 0;

    friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// The residue/Jacobi condition under which the form represents p (resp. 4p).
inline bool form_applicable(std::uint64_t p, FormDescriptor form) {
    switch (form.d) {
        case 1: return p % 4 == 1;
        case 2: return p % 8 == 1 || p % 8 == 3;
        case 3: return p % 3 == 1;
        case 27: return p % 3 == 1;
        case 19: return jacobi(static_cast<std::int64_t>(p), 19) == 1;
        default: throw std::invalid_argument("form_applicable: unsupported form");
    }
}

// Cornacchia: x^2 + d*y^2 = p, seeded by a square root of -d mod p, then a
// Euclidean descent to the first remainder below sqrt(p).
inline std::optional<QuadRep> represent(const PrimeContext& ctx, FormDescriptor form) {
    const std::uint64_t p = ctx.p;
    const std::uint64_t d = static_cast<std::uint64_t>(form.d);
    if (!form_applicable(p, form)) return std::nullopt;

    std::uint64_t md = (p - d % p) % p;  // -d mod p; nonzero since p ∤ d when applicable
    assert(md != 0);
    std::uint64_t r0 = sqrt_mod_p(md, ctx);

    std::uint64_t a, b, lim, target;
    if (form.scale == 1) {
        if (r0 < p - r0) r0 = p - r0;  // start from the root in (p/2, p)
        a = p;
        b = r0;
        lim = isqrt_u64(p);
        target = p;
    } else {
        // 4p variant: descend from 2p with an odd root of x^2 = -d (mod 4p).
        if (r0 % 2 == 0) r0 = p - r0;
        a = 2 * p;
        b = r0;
        lim = isqrt_u64(4 * p);
        target = 4 * p;
    }
    while (b > lim) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    if (b == 0) return std::nullopt;
    std::uint64_t rem = target - b * b;
    if (rem % d != 0) return std::nullopt;
    std::uint64_t y = isqrt_u64(rem / d);
    if (y * y != rem / d) return std::nullopt;
    return QuadRep{static_cast<std::int64_t>(b), static_cast<std::int64_t>(y), form, p};
}

namespace detail {
inline int mod_pos(std::int64_t v, int m) {
    int r = static_cast<int>(v % m);
    return r < 0 ? r + m : r;
}
}  // namespace detail

// Sign/swap normalization:
//   d=3:  A = 1 (mod 3)            d=2:  c = 1 (mod 4)
//   d=27: L = 1 (mod 3)            d=19: x > 0
//   d=1:  a odd with a = 1 (mod 4); for p = 5 (mod 12) the sign of b is fixed
//         by 3 | a-b, otherwise b > 0.
inline QuadRep normalize(QuadRep rep) {
    using detail::mod_pos;
    switch (rep.form.d) {
        case 3:
        case 27:
            if (mod_pos(rep.x, 3) != 1) rep.x = -rep.x;
            if (mod_pos(rep.x, 3) != 1) throw NormalizationImpossible("x = 0 mod 3");
            rep.y = std::abs(rep.y);
            break;
        case 2:
            if (mod_pos(rep.x, 4) != 1) rep.x = -rep.x;
            if (mod_pos(rep.x, 4) != 1) throw NormalizationImpossible("x even for d = 2");
            rep.y = std::abs(rep.y);
            break;
        case 19:
            rep.x = std::abs(rep.x);
            if (rep.x == 0) throw NormalizationImpossible("x = 0 for d = 19");
            rep.y = std::abs(rep.y);
            break;
        case 1: {
            if (rep.x % 2 == 0) std::swap(rep.x, rep.y);
            if (rep.x % 2 == 0) throw NormalizationImpossible("no odd coordinate for d = 1");
            if (mod_pos(rep.x, 4) != 1) rep.x = -rep.x;
            rep.y = std::abs(rep.y);
            if (rep.p % 12 == 5) {
                // here 3 ∤ a and 3 ∤ b, so exactly one sign of b gives 3 | a-b
                if ((rep.x - rep.y) % 3 != 0) rep.y = -rep.y;
                if ((rep.x - rep.y) % 3 != 0) throw NormalizationImpossible("no b with 3 | a-b");
            }
            break;
        }
        default:
            throw std::invalid_argument("normalize: unsupported form");
    }
    return rep;
}

// The case selector for the p = a^2 + b^2 closed form (p = 1 mod 4, rep
// normalized): r = a or -a depending on 3 | a when p = 1 (mod 12), and r = b
// (the coordinate with 3 | a-b) when p = 5 (mod 12).
inline std::int64_t selector_r(const QuadRep& rep) {
    assert(rep.form == kFormSquares);
    assert(detail::mod_pos(rep.x, 4) == 1);
    if (rep.p % 12 == 1) return rep.x % 3 == 0 ? -rep.x : rep.x;
    assert(rep.p % 12 == 5);
    assert((rep.x - rep.y) % 3 == 0);
    return rep.y;
}

}  // namespace supercong::quadform

#endif  // SUPERCONG_QUADFORM_HPP
