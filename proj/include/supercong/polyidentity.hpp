#ifndef SUPERCONG_POLYIDENTITY_HPP
#define SUPERCONG_POLYIDENTITY_HPP

// Coefficient-wise verification mod p^2 of the three polynomial congruences
//   sum w_k (x(1-c x))^k  =  ( sum v_k x^k )^2   (k = 0 .. p-1)
// with (w, v, c) one of
//   I1: (C(2k,k)^2 C(3k,k),        C(2k,k)C(3k,k),  27)
//   I2: (C(2k,k)^2 C(4k,2k),       C(2k,k)C(4k,2k), 64)
//   I3: (C(2k,k)C(3k,k)C(6k,3k),   C(3k,k)C(6k,3k), 432)

#include <cstdint>
#include <vector>

#include "supercong/binomsums.hpp"
#include "supercong/modp2.hpp"

namespace supercong::polyidentity {

using binomsums::CentralProductGenerator;
using binomsums::SumFamily;

struct IdentityFamily {
    int id = 1;  // 1, 2, 3

    std::uint64_t kernel_constant() const { return id == 1 ? 27 : id == 2 ? 64 : 432; }
    SumFamily weight_family() const {
        return id == 1 ? SumFamily::F4 : id == 2 ? SumFamily::F5 : SumFamily::F6;
    }
    SumFamily base_family() const {
        return id == 1 ? SumFamily::F1 : id == 2 ? SumFamily::F2 : SumFamily::F3;
    }
};

// Coefficients mod p^2, index k = coefficient of x^k, trailing zeros trimmed.
struct PolyModP2 {
    std::vector<Residue2> coeff;

    void trim() {
        while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
    }
    Residue2 at(std::size_t i) const { return i < coeff.size() ? coeff[i] : 0; }
    std::size_t size() const { return coeff.size(); }
};

inline Residue2 eval_poly(const PolyModP2& f, Residue2 x, const PrimeContext& ctx) {
    Residue2 acc = 0;
    for (std::size_t i = f.coeff.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), f.coeff[i]);
    return acc;
}

// sum_{k<p} w_k x^k (1 - c x)^k expanded to coefficient form; degree <= 2(p-1).
// The kernel power is maintained incrementally: q_{k+1} = q_k * (x - c x^2).
inline PolyModP2 lhs_poly(IdentityFamily fam, const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p;
    const Residue2 c = ctx.reduce_int(static_cast<std::int64_t>(fam.kernel_constant()));
    const std::size_t deg = 2 * (p - 1);
    std::vector<Residue2> acc(deg + 1, 0), q(deg + 1, 0);
    q[0] = 1;
    CentralProductGenerator gen(ctx);
    for (std::uint64_t k = 0; k < p; ++k) {
        Residue2 w = padic_to_residue(gen.product(fam.weight_family()), ctx);
        if (w != 0)
            for (std::size_t i = 0; i <= 2 * k; ++i)
                if (q[i] != 0) acc[i] = ctx.add(acc[i], ctx.mul(w, q[i]));
        if (k + 1 < p) {
            for (std::size_t i = 2 * k + 2; i > 0; --i)
                q[i] = ctx.sub(q[i - 1], i >= 2 ? ctx.mul(c, q[i - 2]) : 0);
            q[0] = 0;
            gen.advance();
        }
    }
    PolyModP2 f{std::move(acc)};
    f.trim();
    return f;
}

// ( sum_{k<p} v_k x^k )^2 by schoolbook convolution; degree <= 2(p-1).
inline PolyModP2 rhs_poly(IdentityFamily fam, const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p;
    std::vector<Residue2> g(p);
    CentralProductGenerator gen(ctx);
    for (std::uint64_t k = 0; k < p; ++k) {
        g[k] = padic_to_residue(gen.product(fam.base_family()), ctx);
        if (k + 1 < p) gen.advance();
    }
    std::vector<Residue2> acc(2 * p - 1, 0);
    for (std::uint64_t i = 0; i < p; ++i) {
        if (g[i] == 0) continue;
        for (std::uint64_t j = 0; j < p; ++j)
            if (g[j] != 0) acc[i + j] = ctx.add(acc[i + j], ctx.mul(g[i], g[j]));
    }
    PolyModP2 f{std::move(acc)};
    f.trim();
    return f;
}

struct IdentityOutcome {
    bool pass = true;
    std::size_t first_diff = 0;  // valid when !pass
    Residue2 lhs = 0, rhs = 0;
};

inline IdentityOutcome check_identity(IdentityFamily fam, const PrimeContext& ctx) {
    PolyModP2 l = lhs_poly(fam, ctx);
    PolyModP2 r = rhs_poly(fam, ctx);
    std::size_t n = std::max(l.size(), r.size());
    for (std::size_t i = 0; i < n; ++i)
        if (l.at(i) != r.at(i)) return {false, i, l.at(i), r.at(i)};
    assert(l.size() == r.size());
    return {};
}

}  // namespace supercong::polyidentity

#endif  // SUPERCONG_POLYIDENTITY_HPP
