#ifndef SUPERCONG_CLAIMS_HPP
#define SUPERCONG_CLAIMS_HPP

// Registry of the per-prime congruence claims: for each claim, the sum
// family and base, the applicability predicate on p, the closed-form
// right-hand side recipe, and the proof status. verify_claim computes both
// sides mod p^2 and reports PASS / FAIL / NA.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supercong/binomsums.hpp"
#include "supercong/modp2.hpp"
#include "supercong/quadform.hpp"
#include "supercong/wz.hpp"

namespace supercong::claims {

using binomsums::Rational64;
using binomsums::SumFamily;

enum class ClaimStatus { Proved, Conjecture };

inline const char* status_name(ClaimStatus s) { return s == ClaimStatus::Proved ? "proved" : "conjecture"; }

// Right-hand side recipes. The Branch* kinds carry their own residue split
// (closed form on one class, zero on the complement); the others apply only
// where the claim's applicability predicate holds.
enum class RhsKind {
    Zero,              // 0 mod p^2
    BranchForm3,       // p=1 mod 3: 4A^2-2p with p=A^2+3B^2; else 0
    BranchForm2,       // p=1,3 mod 8: 4c^2-2p with p=c^2+2d^2; else 0
    BranchForm1,       // p=1 mod 4: (p|3)(4a^2-2p) with p=a^2+b^2, a odd; else 0
    TwoAHalfP,         // 2A - p/(2A), A from p=A^2+3B^2, A=1 mod 3
    SignedTwoC,        // (-1)^{[p/8]+(p-1)/2} (2c - p/(2c)), c=1 mod 4
    SelectorTwoR,      // 2r - p/(2r), r the a/b case selector for p=a^2+b^2
    LSquared,          // L^2 - 2p, 4p=L^2+27M^2
    JacobiXSquared,    // (-6|p)(x^2-2p), 4p=x^2+19y^2
};

struct Applicability {
    std::uint32_t modulus = 0;            // 0: no residue condition
    std::vector<std::uint32_t> residues;  // allowed p mod modulus
    std::int64_t jacobi_q = 0;            // 0: no Jacobi condition
    int jacobi_value = 0;
    std::uint64_t p_greater_than = 3;
    std::vector<std::uint64_t> excluded;
};

struct CongruenceClaim {
    std::string id;
    SumFamily family;
    Rational64 m;
    Applicability when;
    RhsKind rhs;
    ClaimStatus status;
};

// All claims, in source order. Bases quoted as integers: (-15)^3 = -3375,
// 255^3 = 16581375, (-32)^3 = -32768, (-96)^3 = -884736, (-960)^3 =
// -884736000, (-5280)^3 = -147197952000, (-640320)^3 = -262537412640768000.
inline const std::vector<CongruenceClaim>& registry() {
    static const std::vector<CongruenceClaim> claims = {
        {"Eq1.1", SumFamily::F4, {108, 1}, {}, RhsKind::BranchForm3, ClaimStatus::Proved},
        {"Eq1.2", SumFamily::F5, {256, 1}, {}, RhsKind::BranchForm2, ClaimStatus::Proved},
        {"Eq1.3", SumFamily::F6, {1728, 1}, {}, RhsKind::BranchForm1, ClaimStatus::Proved},
        {"Thm2.2", SumFamily::F1, {54, 1}, {.modulus = 3, .residues = {1}}, RhsKind::TwoAHalfP,
         ClaimStatus::Proved},
        {"Rem2.1", SumFamily::F1, {54, 1}, {.modulus = 6, .residues = {5}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm2.3", SumFamily::F4, {-192, 1}, {.modulus = 6, .residues = {5}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Conj1.4-open", SumFamily::F4, {-192, 1}, {.modulus = 3, .residues = {1}}, RhsKind::LSquared,
         ClaimStatus::Conjecture},
        {"Thm2.5", SumFamily::F2, {128, 1}, {.modulus = 8, .residues = {1, 3}}, RhsKind::SignedTwoC,
         ClaimStatus::Proved},
        {"Rem2.2", SumFamily::F2, {128, 1}, {.modulus = 8, .residues = {5, 7}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm2.6", SumFamily::F5, {648, 1}, {.modulus = 4, .residues = {3}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm2.7", SumFamily::F5, {-144, 1}, {.modulus = 6, .residues = {5}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm2.8", SumFamily::F5, {-3969, 1}, {.modulus = 7, .residues = {3, 5, 6}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm3.2", SumFamily::F3, {864, 1}, {.modulus = 4, .residues = {1}}, RhsKind::SelectorTwoR,
         ClaimStatus::Proved},
        {"Rem3.1", SumFamily::F3, {864, 1}, {.modulus = 4, .residues = {3}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm3.3a", SumFamily::F6, {-3375, 1},
         {.modulus = 7, .residues = {3, 5, 6}, .p_greater_than = 7}, RhsKind::Zero, ClaimStatus::Proved},
        {"Thm3.3b", SumFamily::F6, {16581375, 1},
         {.modulus = 7, .residues = {3, 5, 6}, .p_greater_than = 7}, RhsKind::Zero, ClaimStatus::Proved},
        {"Thm3.4", SumFamily::F6, {-32768, 1}, {.modulus = 11, .residues = {2, 6, 7, 8, 10}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm3.5", SumFamily::F6, {-884736, 1}, {.jacobi_q = 19, .jacobi_value = -1}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Conj1.5-open", SumFamily::F6, {-884736, 1}, {.jacobi_q = 19, .jacobi_value = 1},
         RhsKind::JacobiXSquared, ClaimStatus::Conjecture},
        {"Thm3.6", SumFamily::F6, {-884736000, 1},
         {.jacobi_q = 43, .jacobi_value = -1, .p_greater_than = 5}, RhsKind::Zero, ClaimStatus::Proved},
        {"Thm3.7", SumFamily::F6, {-147197952000, 1},
         {.jacobi_q = 67, .jacobi_value = -1, .p_greater_than = 5, .excluded = {11}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm3.8", SumFamily::F6, {-262537412640768000, 1},
         {.jacobi_q = 163, .jacobi_value = -1, .excluded = {5, 23, 29}}, RhsKind::Zero,
         ClaimStatus::Proved},
        {"Thm3.9", SumFamily::F6, {287496, 1}, {.modulus = 4, .residues = {3}, .excluded = {11}},
         RhsKind::Zero, ClaimStatus::Proved},
        {"Thm3.10", SumFamily::F6, {8000, 1}, {.modulus = 8, .residues = {5, 7}, .p_greater_than = 5},
         RhsKind::Zero, ClaimStatus::Proved},
        {"Thm3.11", SumFamily::F6, {54000, 1}, {.modulus = 3, .residues = {2}, .p_greater_than = 5},
         RhsKind::Zero, ClaimStatus::Proved},
    };
    return claims;
}

inline const CongruenceClaim* find_claim(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return &c;
    return nullptr;
}

enum class Outcome { Pass, Fail, NA };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "PASS";
        case Outcome::Fail: return "FAIL";
        default: return "NA";
    }
}

struct VerificationReport {
    std::string claim;
    std::uint64_t p = 0;
    Outcome outcome = Outcome::NA;
    std::optional<Residue2> lhs;
    std::optional<Residue2> rhs;
    ClaimStatus status = ClaimStatus::Proved;
    std::string reason;  // NA explanation or failure note; empty otherwise
};

// Empty string when the claim applies at p; otherwise the NA reason.
inline std::string applicability_block_reason(const CongruenceClaim& c, std::uint64_t p) {
    if (p <= c.when.p_greater_than)
        return "requires p > " + std::to_string(c.when.p_greater_than);
    if (std::find(c.when.excluded.begin(), c.when.excluded.end(), p) != c.when.excluded.end())
        return "p = " + std::to_string(p) + " excluded by hypothesis";
    std::int64_t sp = static_cast<std::int64_t>(p);
    if (c.m.num % sp == 0 || c.m.den % sp == 0) return "p divides base m = " + c.m.str();
    if (c.when.modulus != 0) {
        std::uint32_t r = static_cast<std::uint32_t>(p % c.when.modulus);
        if (std::find(c.when.residues.begin(), c.when.residues.end(), r) == c.when.residues.end())
            return "p = " + std::to_string(r) + " mod " + std::to_string(c.when.modulus) +
                   " outside {" + [&] {
                       std::string s;
                       for (auto v : c.when.residues) s += (s.empty() ? "" : ",") + std::to_string(v);
                       return s;
                   }() + "}";
    }
    if (c.when.jacobi_q != 0 &&
        jacobi(static_cast<std::int64_t>(p), static_cast<std::uint64_t>(c.when.jacobi_q)) != c.when.jacobi_value)
        return "(p|" + std::to_string(c.when.jacobi_q) + ") != " + std::to_string(c.when.jacobi_value);
    return {};
}

namespace detail {

inline Residue2 two_r_minus_p_over(std::int64_t r, const PrimeContext& ctx) {
    Residue2 two_r = ctx.reduce_int(2 * r);
    return ctx.sub(two_r, ctx.mul(ctx.p, ctx.inv(two_r)));
}

inline quadform::QuadRep normalized_rep(const PrimeContext& ctx, quadform::FormDescriptor form) {
    auto rep = quadform::represent(ctx, form);
    assert(rep.has_value());
    return quadform::normalize(*rep);
}

inline Residue2 rhs_value(const CongruenceClaim& c, const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p;
    switch (c.rhs) {
        case RhsKind::Zero:
            return 0;
        case RhsKind::BranchForm3: {
            if (p % 3 != 1) return 0;
            auto rep = normalized_rep(ctx, quadform::kFormThrice);
            return ctx.reduce_int(4 * rep.x * rep.x - 2 * static_cast<std::int64_t>(p));
        }
        case RhsKind::BranchForm2: {
            if (p % 8 != 1 && p % 8 != 3) return 0;
            auto rep = normalized_rep(ctx, quadform::kFormTwice);
            return ctx.reduce_int(4 * rep.x * rep.x - 2 * static_cast<std::int64_t>(p));
        }
        case RhsKind::BranchForm1: {
            if (p % 4 != 1) return 0;
            auto rep = normalized_rep(ctx, quadform::kFormSquares);
            std::int64_t v = 4 * rep.x * rep.x - 2 * static_cast<std::int64_t>(p);
            return ctx.reduce_int(jacobi(static_cast<std::int64_t>(p), 3) * v);
        }
        case RhsKind::TwoAHalfP:
            return two_r_minus_p_over(normalized_rep(ctx, quadform::kFormThrice).x, ctx);
        case RhsKind::SignedTwoC: {
            auto rep = normalized_rep(ctx, quadform::kFormTwice);
            Residue2 v = two_r_minus_p_over(rep.x, ctx);
            bool flip = ((p / 8 + (p - 1) / 2) % 2) != 0;
            return flip ? ctx.neg(v) : v;
        }
        case RhsKind::SelectorTwoR:
            return two_r_minus_p_over(quadform::selector_r(normalized_rep(ctx, quadform::kFormSquares)), ctx);
        case RhsKind::LSquared: {
            auto rep = normalized_rep(ctx, quadform::kForm27);
            return ctx.reduce_int(rep.x * rep.x - 2 * static_cast<std::int64_t>(p));
        }
        case RhsKind::JacobiXSquared: {
            auto rep = normalized_rep(ctx, quadform::kForm19);
            std::int64_t v = rep.x * rep.x - 2 * static_cast<std::int64_t>(p);
            return ctx.reduce_int(jacobi(-6, p) * v);
        }
    }
    return 0;
}

// Independent slow path: terms from exact big-integer binomials, reduced mod
// p^2. Used to double-check conjecture counterexample candidates before they
// are reported.
inline Residue2 sum_family_reference(SumFamily f, Rational64 m, std::uint64_t upper, const PrimeContext& ctx) {
    const wz::BigInt P2 = ctx.p2;
    Residue2 w = 1;
    Residue2 minv = binomsums::base_inverse(m, ctx);
    Residue2 acc = 0;
    for (std::uint64_t k = 0; k <= upper; ++k) {
        long lk = static_cast<long>(k);
        wz::BigInt b2 = wz::big_binom(2 * lk, lk), b3 = wz::big_binom(3 * lk, lk);
        wz::BigInt b4 = wz::big_binom(4 * lk, 2 * lk), b6 = wz::big_binom(6 * lk, 3 * lk);
        wz::BigInt t;
        switch (f) {
            case SumFamily::F1: t = b2 * b3; break;
            case SumFamily::F2: t = b2 * b4; break;
            case SumFamily::F3: t = b3 * b6; break;
            case SumFamily::F4: t = b2 * b2 * b3; break;
            case SumFamily::F5: t = b2 * b2 * b4; break;
            case SumFamily::F6: t = b2 * b3 * b6; break;
        }
        Residue2 tr = static_cast<Residue2>(t % P2);
        acc = ctx.add(acc, ctx.mul(tr, w));
        w = ctx.mul(w, minv);
    }
    return acc;
}

}  // namespace detail

// Computes LHS = sum over k < p of the family term / m^k and the recipe RHS,
// both mod p^2; outcome NA when the applicability predicate fails at p.
// A failing conjecture-status claim is recomputed through the independent
// big-integer route before being reported as a counterexample candidate.
inline VerificationReport verify_claim(const CongruenceClaim& c, const PrimeContext& ctx,
                                       std::optional<Residue2> precomputed_lhs = std::nullopt) {
    VerificationReport rep;
    rep.claim = c.id;
    rep.p = ctx.p;
    rep.status = c.status;
    rep.reason = applicability_block_reason(c, ctx.p);
    if (!rep.reason.empty()) {
        rep.outcome = Outcome::NA;
        return rep;
    }
    Residue2 lhs = precomputed_lhs ? *precomputed_lhs : binomsums::sum_family(c.family, c.m, ctx.p - 1, ctx);
    Residue2 rhs = detail::rhs_value(c, ctx);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.outcome = lhs == rhs ? Outcome::Pass : Outcome::Fail;
    if (rep.outcome == Outcome::Fail) {
        Residue2 slow = detail::sum_family_reference(c.family, c.m, ctx.p - 1, ctx);
        if (slow != lhs) {
            rep.reason = "internal: fast and reference sums disagree (" + std::to_string(lhs) + " vs " +
                         std::to_string(slow) + ")";
        } else if (c.status == ClaimStatus::Conjecture) {
            rep.reason = "counterexample candidate (reconfirmed by big-integer reduction)";
        }
    }
    return rep;
}

// One prime, many claims: the six family term sequences are generated once
// and every claim's sum reuses them.
class PrimeSweeper {
  public:
    explicit PrimeSweeper(std::vector<const CongruenceClaim*> selected) : selected_(std::move(selected)) {
        for (const auto* c : selected_)
            if (std::find(families_.begin(), families_.end(), c->family) == families_.end())
                families_.push_back(c->family);
    }

    std::vector<VerificationReport> run(const PrimeContext& ctx) {
        binomsums::family_terms(families_, ctx.p - 1, ctx, terms_);
        std::vector<VerificationReport> out;
        out.reserve(selected_.size());
        for (const auto* c : selected_) {
            if (!applicability_block_reason(*c, ctx.p).empty()) {
                out.push_back(verify_claim(*c, ctx));
                continue;
            }
            std::size_t fi = static_cast<std::size_t>(
                std::find(families_.begin(), families_.end(), c->family) - families_.begin());
            const auto& t = terms_[fi];
            Residue2 minv = binomsums::base_inverse(c->m, ctx);
            Residue2 acc = 0, w = 1;
            for (std::uint64_t k = 0; k < ctx.p; ++k) {
                acc = ctx.add(acc, ctx.mul(t[k], w));
                w = ctx.mul(w, minv);
            }
            out.push_back(verify_claim(*c, ctx, acc));
        }
        return out;
    }

  private:
    std::vector<const CongruenceClaim*> selected_;
    std::vector<SumFamily> families_;           // families used by the selection
    std::vector<std::vector<Residue2>> terms_;  // reused across primes
};

struct ScanOutcome {
    bool pass = true;
    std::uint64_t primes_scanned = 0;
    std::vector<std::uint64_t> witnesses;   // truncated sum = 0 mod p
    std::vector<std::uint64_t> violations;  // witness whose full sum != 0 mod p^2
};

// Zero-implication scan: wherever the truncated sum vanishes mod p, the full
// sum must vanish mod p^2.
inline ScanOutcome zero_implication_scan(SumFamily f, Rational64 m, std::uint64_t lo, std::uint64_t hi) {
    ScanOutcome out;
    for (std::uint64_t p : primes_in_range(std::max<std::uint64_t>(lo, 5), hi)) {
        if (m.num % static_cast<std::int64_t>(p) == 0 || m.den % static_cast<std::int64_t>(p) == 0) continue;
        PrimeContext ctx(p);
        ++out.primes_scanned;
        Residue2 trunc = binomsums::sum_family(f, m, binomsums::truncation_bound(f, p), ctx);
        if (trunc % p != 0) continue;
        out.witnesses.push_back(p);
        if (binomsums::sum_family(f, m, p - 1, ctx) != 0) {
            out.violations.push_back(p);
            out.pass = false;
        }
    }
    return out;
}

struct SubstitutionOutcome {
    Outcome outcome = Outcome::NA;
    std::string reason;
};

// The square-root substitution relating a product family to the square of
// its single-product partner: with c the kernel constant of pair t (27, 64,
// 432), x = (1 - sqrt(1 - 4c/m)) / (2c) satisfies x(1-cx) = 1/m, and
//   sum F_{t+3} / m^k  =  ( sum F_t x^k )^2   mod p^2
// for both square roots. m = 4c exactly gives the degenerate double root
// x = 1/(2c); a discriminant that is 0 mod p (without m = 4c) or a
// non-residue is reported NA.
inline SubstitutionOutcome corollary_substitution_check(int pair, Rational64 m, const PrimeContext& ctx) {
    if (pair < 1 || pair > 3) throw std::invalid_argument("substitution pair must be 1, 2 or 3");
    const std::int64_t c = pair == 1 ? 27 : pair == 2 ? 64 : 432;
    const SumFamily product_fam = static_cast<SumFamily>(pair + 3);
    const SumFamily base_fam = static_cast<SumFamily>(pair);

    Residue2 lhs;
    try {
        lhs = binomsums::sum_family(product_fam, m, ctx.p - 1, ctx);
    } catch (const BadBase&) {
        return {Outcome::NA, "p divides base m"};
    }

    std::vector<Residue2> roots;
    if (m.den == 1 && m.num == 4 * c) {
        roots.push_back(0);  // double root: x = 1/(2c)
    } else {
        Residue2 minv = binomsums::base_inverse(m, ctx);
        Residue2 disc = ctx.sub(1, ctx.mul(ctx.reduce_int(4 * c), minv));
        if (disc % ctx.p == 0) return {Outcome::NA, "discriminant not a unit"};
        auto r = sqrt_mod_p2(disc, ctx);
        if (!r) return {Outcome::NA, "discriminant is a quadratic non-residue"};
        roots.push_back(*r);
        roots.push_back(ctx.neg(*r));
    }
    Residue2 inv2c = ctx.inv(ctx.reduce_int(2 * c));
    for (Residue2 r : roots) {
        Residue2 x = ctx.mul(ctx.sub(1, r), inv2c);
        // kernel consistency: x (1 - c x) m = 1 mod p^2
        Residue2 kernel = ctx.mul(x, ctx.sub(1, ctx.mul(ctx.reduce_int(c), x)));
        Residue2 prod = ctx.mul(ctx.mul(kernel, ctx.reduce_int(m.num)), ctx.inv(ctx.reduce_int(m.den)));
        if (prod != 1)
            return {Outcome::Fail, "substitution point fails x(1-cx) = 1/m at root " + std::to_string(r)};
        Residue2 s = binomsums::sum_family_at(base_fam, x, ctx.p - 1, ctx);
        if (ctx.mul(s, s) != lhs)
            return {Outcome::Fail, "squared sum differs from product-family sum at root " + std::to_string(r)};
    }
    return {Outcome::Pass, {}};
}

}  // namespace supercong::claims

#endif  // SUPERCONG_CLAIMS_HPP
