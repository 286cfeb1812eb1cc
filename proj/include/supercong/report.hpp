#ifndef SUPERCONG_REPORT_HPP
#define SUPERCONG_REPORT_HPP

// Serializes verification outcomes as human-readable text or JSON lines and
// aggregates per-claim statistics. Residues and primes are emitted as
// decimal strings; wall time appears only in the summary footer and is
// suppressed by the no-timing flag, so identical inputs give byte-identical
// output.

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "supercong/claims.hpp"

namespace supercong::report {

inline constexpr const char* kToolVersion = "0.1.0";

using claims::Outcome;
using claims::VerificationReport;

struct ClaimStats {
    std::uint64_t pass = 0, fail = 0, na = 0;
};

struct RunSummary {
    std::string config;  // echo of the effective command configuration
    std::map<std::string, ClaimStats> per_claim;
    std::uint64_t primes_scanned = 0;
    double wall_seconds = 0.0;
    bool show_timing = true;

    void count(const VerificationReport& r) {
        auto& s = per_claim[r.claim];
        switch (r.outcome) {
            case Outcome::Pass: ++s.pass; break;
            case Outcome::Fail: ++s.fail; break;
            case Outcome::NA: ++s.na; break;
        }
    }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["claim"] = r.claim;
    j["p"] = std::to_string(r.p);
    j["outcome"] = claims::outcome_name(r.outcome);
    j["lhs"] = r.lhs ? nlohmann::json(std::to_string(*r.lhs)) : nlohmann::json(nullptr);
    j["rhs"] = r.rhs ? nlohmann::json(std::to_string(*r.rhs)) : nlohmann::json(nullptr);
    j["status"] = claims::status_name(r.status);
    j["reason"] = r.reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.reason);
    return j;
}

// Pre: reports sorted by (claim id, prime). Returns false on an IO failure.
inline bool emit_jsonl(std::ostream& out, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) {
        out << to_json(r).dump() << '\n';
        if (!out) return false;
    }
    out.flush();
    return static_cast<bool>(out);
}

// Pre: reports sorted by (claim id, prime). One summary block per claim,
// then every failure, then the run footer.
inline bool emit_text(std::ostream& out, const std::vector<VerificationReport>& reports,
                      const RunSummary& summary) {
    for (const auto& [id, s] : summary.per_claim) {
        const VerificationReport* any = nullptr;
        for (const auto& r : reports)
            if (r.claim == id) {
                any = &r;
                break;
            }
        out << "claim " << id << " [" << (any ? claims::status_name(any->status) : "?") << "]"
            << "  pass=" << s.pass << " fail=" << s.fail << " na=" << s.na << '\n';
    }
    bool any_fail = false;
    for (const auto& r : reports) {
        if (r.outcome != Outcome::Fail) continue;
        if (!any_fail) {
            out << "failures:\n";
            any_fail = true;
        }
        out << "  " << r.claim << " p=" << r.p << " lhs=" << (r.lhs ? std::to_string(*r.lhs) : "-")
            << " rhs=" << (r.rhs ? std::to_string(*r.rhs) : "-");
        if (!r.reason.empty()) out << "  (" << r.reason << ")";
        out << '\n';
    }
    if (!any_fail) out << "failures: none\n";
    out << "primes scanned: " << summary.primes_scanned << '\n';
    if (!summary.config.empty()) out << "config: " << summary.config << '\n';
    if (summary.show_timing)
        out << "wall time: " << std::fixed << std::setprecision(2) << summary.wall_seconds << "s\n";
    out << "tool version: " << kToolVersion << '\n';
    out.flush();
    return static_cast<bool>(out);
}

// Highlighted notice for conjecture-status failures; does not affect the
// process exit status.
inline void emit_counterexample_banner(std::ostream& out, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) {
        if (r.outcome != Outcome::Fail || r.status != claims::ClaimStatus::Conjecture) continue;
        out << "*** COUNTEREXAMPLE CANDIDATE: claim " << r.claim << " at p=" << r.p
            << " lhs=" << (r.lhs ? std::to_string(*r.lhs) : "-")
            << " rhs=" << (r.rhs ? std::to_string(*r.rhs) : "-") << " ***\n";
    }
}

}  // namespace supercong::report

#endif  // SUPERCONG_REPORT_HPP
