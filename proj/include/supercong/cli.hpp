#ifndef SUPERCONG_CLI_HPP
#define SUPERCONG_CLI_HPP

// Command-line driver. Subcommands:
//   claims       sweep the congruence claim registry over a prime range
//   identity     coefficient-wise polynomial congruence checks mod p^2
//   lemma        exact equality of both convolution-identity sides
//   recurrence   exact three-term recurrence checks
//   certificate  pointwise telescoping-certificate validation
//   substitution square-root substitution checks (product sum = squared sum)
//   scan-zero    truncated-zero implies full-zero scans
// Exit codes: 0 all pass or NA, 1 verification failure on proved material,
// 2 usage error, 3 IO error. Conjecture failures alone keep exit 0 but print
// a counterexample-candidate banner.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "supercong/claims.hpp"
#include "supercong/polyidentity.hpp"
#include "supercong/report.hpp"
#include "supercong/wz.hpp"

namespace supercong::cli {

using binomsums::Rational64;

// "LO..HI" with 0 < LO <= HI.
inline std::pair<std::uint64_t, std::uint64_t> parse_prime_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("prime range must look like LO..HI, got '" + s + "'");
    std::size_t pos = 0;
    std::uint64_t lo = std::stoull(s.substr(0, dots), &pos);
    if (pos != dots) throw std::invalid_argument("bad prime range '" + s + "'");
    std::uint64_t hi = std::stoull(s.substr(dots + 2), &pos);
    if (pos != s.size() - dots - 2) throw std::invalid_argument("bad prime range '" + s + "'");
    if (lo == 0 || hi < lo) throw std::invalid_argument("empty prime range '" + s + "'");
    return {lo, hi};
}

// Exact rational base: "54", "-144", "a/b", and cube-style powers such as
// "(-96)^3" or "255^3" (so large bases need not be transcribed by hand).
inline Rational64 parse_rational(const std::string& s) {
    const char* q = s.c_str();
    auto fail = [&] { throw std::invalid_argument("cannot parse rational '" + s + "'"); };
    bool paren = *q == '(';
    if (paren) ++q;
    bool neg = false;
    if (*q == '+' || *q == '-') neg = *q++ == '-';
    if (*q < '0' || *q > '9') fail();
    __int128 base = 0;
    while (*q >= '0' && *q <= '9') {
        base = base * 10 + (*q++ - '0');
        if (base > __int128(1) << 100) fail();
    }
    if (paren && *q++ != ')') fail();
    long exponent = 1;
    if (*q == '^') {
        ++q;
        exponent = 0;
        if (*q < '0' || *q > '9') fail();
        while (*q >= '0' && *q <= '9') {
            exponent = exponent * 10 + (*q++ - '0');
            if (exponent > 64) fail();
        }
    }
    std::int64_t den = 1;
    if (*q == '/') {
        ++q;
        if (*q < '0' || *q > '9') fail();
        __int128 d = 0;
        while (*q >= '0' && *q <= '9') {
            d = d * 10 + (*q++ - '0');
            if (d > INT64_MAX) fail();
        }
        if (d == 0) fail();
        den = static_cast<std::int64_t>(d);
    }
    if (*q != '\0') fail();
    __int128 num = 1;
    for (long i = 0; i < exponent; ++i) {
        num *= base;
        if (num > INT64_MAX) fail();
    }
    if (neg && exponent % 2 == 1) num = -num;
    return Rational64::make(static_cast<std::int64_t>(num), den);
}

namespace detail {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

inline void print_timing(std::ostream& out, bool show, const Timer& t) {
    if (show) out << "wall time: " << std::fixed << std::setprecision(2) << t.seconds() << "s\n";
}

inline int run_claims(std::ostream& out, std::ostream& err, const std::string& range,
                      const std::vector<std::string>& claim_filter, const std::string& format,
                      unsigned jobs, bool no_timing) {
    auto [lo, hi] = parse_prime_range(range);
    std::vector<const claims::CongruenceClaim*> selected;
    if (claim_filter.empty()) {
        for (const auto& c : claims::registry()) selected.push_back(&c);
    } else {
        for (const auto& id : claim_filter) {
            const auto* c = claims::find_claim(id);
            if (!c) throw std::invalid_argument("unknown claim id '" + id + "'");
            selected.push_back(c);
        }
    }
    Timer timer;
    std::vector<std::uint64_t> primes = primes_in_range(std::max<std::uint64_t>(lo, 5), hi);
    std::vector<std::vector<claims::VerificationReport>> per_prime(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        claims::PrimeSweeper sweeper(selected);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) break;
            PrimeContext ctx(primes[i]);
            per_prime[i] = sweeper.run(ctx);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t + 1 < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }

    std::vector<claims::VerificationReport> all;
    all.reserve(primes.size() * selected.size());
    for (auto& v : per_prime)
        for (auto& r : v) all.push_back(std::move(r));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.claim != b.claim ? a.claim < b.claim : a.p < b.p;
    });

    report::RunSummary summary;
    summary.primes_scanned = primes.size();
    summary.show_timing = !no_timing;
    summary.wall_seconds = timer.seconds();
    summary.config = "claims --primes " + std::to_string(lo) + ".." + std::to_string(hi);
    for (const auto* c : selected)
        if (!claim_filter.empty()) summary.config += " --claim " + c->id;
    summary.config += " --format " + format;
    for (const auto& r : all) summary.count(r);

    bool io_ok;
    if (format == "jsonl") {
        io_ok = report::emit_jsonl(out, all);
        report::RunSummary side = summary;
        io_ok = report::emit_text(err, {}, side) && io_ok;
    } else {
        io_ok = report::emit_text(out, all, summary);
    }
    report::emit_counterexample_banner(err, all);
    if (!io_ok) return 3;
    for (const auto& r : all)
        if (r.outcome == claims::Outcome::Fail && r.status == claims::ClaimStatus::Proved) return 1;
    return 0;
}

inline int run_identity(std::ostream& out, int family, const std::string& range, bool no_timing) {
    auto [lo, hi] = parse_prime_range(range);
    Timer timer;
    int rc = 0;
    std::uint64_t checked = 0;
    for (std::uint64_t p : primes_in_range(std::max<std::uint64_t>(lo, 3), hi)) {
        PrimeContext ctx(p);
        auto res = polyidentity::check_identity({family}, ctx);
        ++checked;
        if (!res.pass) {
            out << "identity family=" << family << " p=" << p << ": FAIL at coefficient x^" << res.first_diff
                << " lhs=" << res.lhs << " rhs=" << res.rhs << '\n';
            rc = 1;
        }
    }
    out << "identity family=" << family << " primes=" << lo << ".." << hi << ": "
        << (rc == 0 ? "PASS" : "FAIL") << " (" << checked << " primes checked)\n";
    print_timing(out, !no_timing, timer);
    return rc;
}

inline int run_lemma(std::ostream& out, int family, long max_m, bool no_timing) {
    Timer timer;
    auto res = wz::lemma_direct_check({family}, max_m);
    out << "lemma family=" << family << " max-m=" << max_m << ": " << (res.pass ? "PASS" : "FAIL");
    if (!res.pass) out << " (" << res.detail << ")";
    out << '\n';
    print_timing(out, !no_timing, timer);
    return res.pass ? 0 : 1;
}

inline int run_recurrence(std::ostream& out, int family, const std::string& side, long max_m,
                          bool no_timing) {
    Timer timer;
    wz::Side s = side == "lhs" ? wz::Side::Lhs : wz::Side::Rhs;
    auto res = wz::recurrence_check({family}, s, max_m);
    out << "recurrence family=" << family << " side=" << side << " max-m=" << max_m << ": "
        << (res.pass ? "PASS" : "FAIL");
    if (!res.pass) out << " (" << res.detail << ")";
    out << '\n';
    print_timing(out, !no_timing, timer);
    return res.pass ? 0 : 1;
}

inline int run_certificate(std::ostream& out, int family, const std::string& side, long max_m, long max_k,
                           bool no_timing) {
    Timer timer;
    wz::Side s = side == "lhs" ? wz::Side::Lhs : wz::Side::Rhs;
    auto res = wz::certificate_check({family}, s, max_m, max_k);
    out << "certificate family=" << family << " side=" << side << " grid m<=" << max_m << " k<=" << max_k
        << ": " << (res.pass ? "PASS" : "FAIL") << " convention=" << wz::convention_name(res.convention)
        << " checked=" << res.checked << " singular=" << res.singular.size()
        << (res.singular_set_predicted ? " (exactly the diagonals k=m+1,m+2)" : " (UNEXPECTED singular set)")
        << " skipped-adjacent=" << res.skipped_adjacent << '\n';
    if (!res.pass && !res.detail.empty()) out << "  " << res.detail << '\n';
    print_timing(out, !no_timing, timer);
    return res.pass ? 0 : 1;
}

inline int run_substitution(std::ostream& out, int pair, const std::string& m_text,
                            const std::string& range, bool no_timing) {
    Rational64 m = parse_rational(m_text);
    auto [lo, hi] = parse_prime_range(range);
    Timer timer;
    std::uint64_t pass = 0, na = 0;
    int rc = 0;
    for (std::uint64_t p : primes_in_range(std::max<std::uint64_t>(lo, 5), hi)) {
        PrimeContext ctx(p);
        auto res = claims::corollary_substitution_check(pair, m, ctx);
        if (res.outcome == claims::Outcome::Pass) ++pass;
        else if (res.outcome == claims::Outcome::NA) ++na;
        else {
            out << "substitution pair=" << pair << " m=" << m.str() << " p=" << p << ": FAIL ("
                << res.reason << ")\n";
            rc = 1;
        }
    }
    out << "substitution pair=" << pair << " m=" << m.str() << " primes=" << lo << ".." << hi << ": "
        << (rc == 0 ? "PASS" : "FAIL") << " (pass=" << pass << " na=" << na << ")\n";
    print_timing(out, !no_timing, timer);
    return rc;
}

inline int run_scan_zero(std::ostream& out, int family, const std::string& m_text, const std::string& range,
                         bool no_timing) {
    if (family < 4 || family > 6) throw std::invalid_argument("scan-zero family must be 4, 5 or 6");
    Rational64 m = parse_rational(m_text);
    auto [lo, hi] = parse_prime_range(range);
    Timer timer;
    auto res = claims::zero_implication_scan(static_cast<binomsums::SumFamily>(family), m, lo, hi);
    out << "scan-zero family=" << family << " m=" << m.str() << " primes=" << lo << ".." << hi << ": "
        << (res.pass ? "PASS" : "FAIL") << " (scanned=" << res.primes_scanned
        << " witnesses=" << res.witnesses.size() << ")\n";
    for (std::uint64_t p : res.violations)
        out << "  violation: truncated sum = 0 mod p but full sum != 0 mod p^2 at p=" << p << '\n';
    print_timing(out, !no_timing, timer);
    return res.pass ? 0 : 1;
}

}  // namespace detail

// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification of binomial-sum supercongruences mod p^2"};
    app.require_subcommand(1);
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "suppress wall-time lines (reproducible output)");

    auto* claims_cmd = app.add_subcommand("claims", "sweep the congruence claim registry");
    std::string claims_range = "5..10000";
    std::vector<std::string> claim_filter;
    std::string format = "text";
    unsigned jobs = 1;
    claims_cmd->add_option("--primes", claims_range, "prime range LO..HI");
    claims_cmd->add_option("--claim", claim_filter, "restrict to claim id (repeatable)");
    claims_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "jsonl"}));
    claims_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    auto* identity_cmd = app.add_subcommand("identity", "polynomial congruence checks");
    int id_family = 1;
    std::string id_range;
    identity_cmd->add_option("--family", id_family, "identity family")->required()->check(CLI::Range(1, 3));
    identity_cmd->add_option("--primes", id_range, "prime range LO..HI")->required();

    auto* lemma_cmd = app.add_subcommand("lemma", "exact convolution-identity checks");
    int lm_family = 1;
    long lm_max_m = 200;
    lemma_cmd->add_option("--family", lm_family, "lemma family")->required()->check(CLI::Range(1, 3));
    lemma_cmd->add_option("--max-m", lm_max_m, "check all m <= max-m")->check(CLI::Range(0L, 100000L));

    auto* rec_cmd = app.add_subcommand("recurrence", "exact recurrence checks");
    int rc_family = 1;
    std::string rc_side = "lhs";
    long rc_max_m = 200;
    rec_cmd->add_option("--family", rc_family, "lemma family")->required()->check(CLI::Range(1, 3));
    rec_cmd->add_option("--side", rc_side, "which side")->required()->check(CLI::IsMember({"lhs", "rhs"}));
    rec_cmd->add_option("--max-m", rc_max_m, "check all m <= max-m - 2")->check(CLI::Range(2L, 100000L));

    auto* cert_cmd = app.add_subcommand("certificate", "telescoping certificate validation");
    int ct_family = 1;
    std::string ct_side = "lhs";
    long ct_max_m = 30, ct_max_k = 30;
    cert_cmd->add_option("--family", ct_family, "lemma family")->required()->check(CLI::Range(1, 3));
    cert_cmd->add_option("--side", ct_side, "which side")->required()->check(CLI::IsMember({"lhs", "rhs"}));
    cert_cmd->add_option("--max-m", ct_max_m, "grid bound in m")->check(CLI::Range(4L, 10000L));
    cert_cmd->add_option("--max-k", ct_max_k, "grid bound in k")->check(CLI::Range(4L, 10000L));

    auto* sub_cmd = app.add_subcommand("substitution", "square-root substitution checks");
    int sb_pair = 1;
    std::string sb_m, sb_range = "5..10000";
    sub_cmd->add_option("--pair", sb_pair, "family pair")->required()->check(CLI::Range(1, 3));
    sub_cmd->add_option("--m", sb_m, "rational base m")->required();
    sub_cmd->add_option("--primes", sb_range, "prime range LO..HI");

    auto* scan_cmd = app.add_subcommand("scan-zero", "zero-implication scans");
    int sc_family = 4;
    std::string sc_m, sc_range = "5..10000";
    scan_cmd->add_option("--family", sc_family, "product family")->required()->check(CLI::Range(4, 6));
    scan_cmd->add_option("--m", sc_m, "rational base m")->required();
    scan_cmd->add_option("--primes", sc_range, "prime range LO..HI");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (claims_cmd->parsed())
            return detail::run_claims(out, err, claims_range, claim_filter, format, jobs, no_timing);
        if (identity_cmd->parsed()) return detail::run_identity(out, id_family, id_range, no_timing);
        if (lemma_cmd->parsed()) return detail::run_lemma(out, lm_family, lm_max_m, no_timing);
        if (rec_cmd->parsed()) return detail::run_recurrence(out, rc_family, rc_side, rc_max_m, no_timing);
        if (cert_cmd->parsed())
            return detail::run_certificate(out, ct_family, ct_side, ct_max_m, ct_max_k, no_timing);
        if (sub_cmd->parsed()) return detail::run_substitution(out, sb_pair, sb_m, sb_range, no_timing);
        if (scan_cmd->parsed()) return detail::run_scan_zero(out, sc_family, sc_m, sc_range, no_timing);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace supercong::cli

#endif  // SUPERCONG_CLI_HPP
