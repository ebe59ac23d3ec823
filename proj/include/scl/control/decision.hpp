#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/cognition/proposal.hpp"
#include "scl/control/dedup.hpp"
#include "scl/termination.hpp"
#include "scl/tool_call.hpp"

namespace scl::control {

enum class Verdict { approve, defer, query, reject_duplicate };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::approve: return "approve";
        case Verdict::defer: return "defer";
        case Verdict::query: return "query";
        case Verdict::reject_duplicate: return "reject_duplicate";
    }
    return "?";
}

inline Verdict verdict_from_string(std::string_view s) {
    for (auto v : {Verdict::approve, Verdict::defer, Verdict::query, Verdict::reject_duplicate}) {
        if (to_string(v) == s) return v;
    }
    throw ValidationError("unknown verdict '" + std::string(s) + "'");
}

/// Result of checking one citation against the state view.
struct GuardCheck {
    std::string citation;
    std::string role;  // "because" or "assertion"
    bool holds = false;

    friend bool operator==(const GuardCheck&, const GuardCheck&) = default;
};

struct Decision {
    Verdict verdict = Verdict::query;
    /// Approved call (canonical args); for terminate, the tool is "terminate".
    std::optional<ToolCall> action;
    /// Note payloads to write into memory (defer / query / duplicate).
    std::vector<json> notes;
    std::vector<GuardCheck> guard_report;
    /// Follow-ups to record as pending actions.
    std::vector<cognition::Proposal::Followup> deferred;
    std::optional<DedupKey> dedup_key;
    /// Set when a terminate proposal is approved.
    std::optional<TerminationStatus> termination;
    /// Pending record this approval releases.
    std::string releases;

    [[nodiscard]] bool approved() const { return verdict == Verdict::approve; }
    [[nodiscard]] bool approves_terminate() const {
        return approved() && action && action->tool == cognition::kTerminate;
    }
    [[nodiscard]] bool all_guards_hold() const {
        return std::all_of(guard_report.begin(), guard_report.end(), [](const GuardCheck& g) { return g.holds; });
    }
};

inline json to_json(const Decision& d) {
    json report = json::array();
    for (const auto& g : d.guard_report) report.push_back(json{{"citation", g.citation}, {"role", g.role}, {"holds", g.holds}});
    json j{{"verdict", std::string(to_string(d.verdict))}, {"guard_report", report}, {"notes", d.notes}};
    if (d.action) j["action"] = scl::to_json(*d.action);
    if (!d.deferred.empty()) {
        json arr = json::array();
        for (const auto& f : d.deferred) {
            arr.push_back(json{{"name", f.propose}, {"args", f.args}, {"because", f.because}, {"after", f.after}});
        }
        j["deferred"] = arr;
    }
    if (d.dedup_key) j["dedup_key"] = to_json(*d.dedup_key);
    if (d.termination) j["termination"] = scl::to_json(*d.termination);
    if (!d.releases.empty()) j["releases"] = d.releases;
    return j;
}

inline Decision decision_from_json(const json& j) {
    Decision d;
    d.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    for (const auto& g : j.at("guard_report")) {
        d.guard_report.push_back({g.at("citation").get<std::string>(), g.at("role").get<std::string>(), g.at("holds").get<bool>()});
    }
    for (const auto& n : j.value("notes", json::array())) d.notes.push_back(n);
    if (j.contains("action")) d.action = tool_call_from_json(j.at("action"));
    for (const auto& f : j.value("deferred", json::array())) {
        d.deferred.push_back({f.at("name").get<std::string>(), f.at("args"), f.at("because").get<std::vector<std::string>>(),
                              f.value("after", std::string{})});
    }
    if (j.contains("dedup_key")) {
        const auto& k = j.at("dedup_key");
        d.dedup_key = DedupKey{k.at("tool").get<std::string>(), canonical_dump(k.at("args")), k.at("context_epoch").get<std::int64_t>()};
    }
    if (j.contains("termination")) d.termination = termination_from_json(j.at("termination"));
    d.releases = j.value("releases", std::string{});
    return d;
}

}  // namespace scl::control
