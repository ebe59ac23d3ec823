#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/cognition/citation.hpp"
#include "scl/error.hpp"
#include "scl/tool_call.hpp"

namespace scl::cognition {

inline constexpr std::string_view kTerminate = "terminate";
/// Cognition could not form a proposal and asks Control to clarify.
inline constexpr std::string_view kQuery = "query";

/// A free-text claim tied to the memory evidence it rests on.
struct Assertion {
    std::string claim;
    std::string evidence;  // a citation

    friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct Judgment {
    std::string proposition;
    std::vector<std::string> evidence;

    friend bool operator==(const Judgment&, const Judgment&) = default;
};

/// Cognition's only output. Nothing here executes; Control decides.
struct Proposal {
    std::string propose;
    json args = json::array();
    std::vector<std::string> because;
    std::vector<Assertion> assertions;
    double confidence = 1.0;
    /// Further actions planned after this one. `after` names a tool whose
    /// executed result must be in memory before the follow-up may run.
    struct Followup {
        std::string propose;
        json args = json::array();
        std::vector<std::string> because;
        std::string after;

        friend bool operator==(const Followup&, const Followup&) = default;
    };
    std::vector<Followup> followups;
    std::optional<Judgment> judgment;

    [[nodiscard]] bool is_terminate() const { return propose == kTerminate; }
    [[nodiscard]] bool is_query() const { return propose == kQuery; }
    [[nodiscard]] bool is_action() const { return !is_terminate() && !is_query(); }
    [[nodiscard]] ToolCall call() const { return ToolCall{propose, args}; }

    friend bool operator==(const Proposal&, const Proposal&) = default;
};

inline Proposal query_proposal(std::string reason) {
    Proposal p;
    p.propose = std::string(kQuery);
    p.args = json::array({std::move(reason)});
    p.because = {"goal exists"};
    return p;
}

inline json to_json(const Proposal& p) {
    json j{{"propose", p.propose}, {"args", p.args}, {"because", p.because}, {"confidence", p.confidence}};
    if (!p.assertions.empty()) {
        json arr = json::array();
        for (const auto& a : p.assertions) arr.push_back(json{{"claim", a.claim}, {"evidence", a.evidence}});
        j["assertions"] = arr;
    }
    if (!p.followups.empty()) {
        json arr = json::array();
        for (const auto& f : p.followups) {
            json fj{{"propose", f.propose}, {"args", f.args}, {"because", f.because}};
            if (!f.after.empty()) fj["after"] = f.after;
            arr.push_back(fj);
        }
        j["followups"] = arr;
    }
    if (p.judgment) j["judgment"] = json{{"proposition", p.judgment->proposition}, {"evidence", p.judgment->evidence}};
    return j;
}

/// Strict parse of a structured proposal. `propose` is required; `args`,
/// `because` and `confidence` default to empty / 1.0. Every citation must
/// parse, and a terminate must cite goal or termination evidence.
inline Proposal proposal_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("proposal must be an object");
    if (!j.contains("propose") || !j.at("propose").is_string() || j.at("propose").get<std::string>().empty()) {
        throw ValidationError("proposal is missing 'propose'");
    }
    Proposal p;
    try {
        p.propose = j.at("propose").get<std::string>();
        p.args = j.value("args", json::array());
        if (!p.args.is_array()) throw ValidationError("proposal 'args' must be an array");
        p.because = j.value("because", std::vector<std::string>{});
        p.confidence = j.value("confidence", 1.0);
        for (const auto& a : j.value("assertions", json::array())) {
            p.assertions.push_back({a.at("claim").get<std::string>(), a.at("evidence").get<std::string>()});
        }
        for (const auto& f : j.value("followups", json::array())) {
            p.followups.push_back({f.at("propose").get<std::string>(), f.value("args", json::array()),
                                   f.value("because", std::vector<std::string>{}), f.value("after", std::string{})});
        }
        if (j.contains("judgment")) {
            const auto& jj = j.at("judgment");
            p.judgment = Judgment{jj.at("proposition").get<std::string>(),
                                  jj.value("evidence", std::vector<std::string>{})};
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed proposal: ") + e.what());
    }
    if (p.confidence < 0.0 || p.confidence > 1.0) throw ValidationError("proposal confidence outside [0,1]");
    for (const auto& c : p.because) {
        if (!is_parseable_citation(c)) throw ValidationError("unparseable citation '" + c + "'");
    }
    if (p.is_terminate()) {
        const bool cites_goal = std::any_of(p.because.begin(), p.because.end(), [](const std::string& c) {
            const auto root = Citation::parse(c).path.root();
            return root == "goal" || root == "termination";
        });
        if (!cites_goal) throw ValidationError("terminate proposal must cite goal or termination evidence");
    }
    return p;
}

}  // namespace scl::cognition
